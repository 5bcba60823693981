#pragma once

// Seeded stand-ins for the parts of a real system that are not built here:
// a synthetic ASR error channel and a noisy command generator.

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ceger/corpus.hpp"
#include "ceger/tokens.hpp"

namespace ceger {

/// Deterministic per-item generator: mt19937_64 seeded from a splitmix64
/// mix of `seed` and `stream`, so items can be processed in any order.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);
/// Stable 64-bit FNV-1a hash (used to derive per-record streams from ids).
std::uint64_t stable_hash(std::string_view text) noexcept;
/// Uniform double in [0, 1) built from the top 53 bits.
double unit_uniform(std::mt19937_64& rng) noexcept;

/// Per-word ASR error probabilities applied to a reference.
struct ErrorRates {
  double substitution = 0.05;
  double insertion = 0.025;
  double deletion = 0.025;
};

class BadRates : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws BadRates unless every rate is >= 0 and their sum is <= 1.
void validate(const ErrorRates& rates);

/// Built-in vocabulary used for generated sentences and for substitutions.
std::span<const std::string_view> builtin_vocabulary() noexcept;

/// `count` sentences with lengths in [min_len, max_len], words drawn from the
/// built-in vocabulary with Zipf-like weights (so words repeat).
std::vector<std::string> generate_source_texts(std::size_t count, std::size_t min_len, std::size_t max_len,
                                               std::uint64_t seed);

/// Perturbs each source text word by word. Substituted and inserted words
/// never occur in the source sentence, so a substitution rate of 1 gives a
/// sentence WER of exactly 1.
std::vector<CorpusRecord> synthesize_corpus(std::span<const std::string> source_texts, const ErrorRates& rates,
                                            std::uint64_t seed);

/// Command-space noise simulating an imperfect generator.
struct NoiseConfig {
  std::uint64_t seed = 0;
  double rate = 0.0;  // per-command perturbation probability
  bool drop = true;
  bool off_by_one = true;
  bool word_swap = true;
};

/// Perturbs commands for one record. Random draws per command are fixed in
/// number, so for a given seed the commands perturbed at a lower rate are a
/// subset of those perturbed at a higher rate.
std::vector<Command> perturb_commands(std::span<const Command> commands, const NoiseConfig& config,
                                      std::string_view record_id, const TokenSeq& hyp);

}  // namespace ceger
