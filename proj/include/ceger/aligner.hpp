#pragma once

// Word-level Levenshtein alignment, edit distance and WER.

#include <cstddef>
#include <string>
#include <vector>

#include "ceger/expected.hpp"
#include "ceger/tokens.hpp"

namespace ceger {

/// Minimum-cost alignment as unit ops (each consumes/produces one word).
struct Alignment {
  std::vector<EditOp> ops;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  /// Number of non-Match ops.
  std::size_t distance() const noexcept;
  TokenSeq hypothesis() const;
  TokenSeq reference() const;
};

/// Unit-cost alignment. Backtrace ties are broken Match > Substitute >
/// Delete > Insert at every cell, so the result is fully deterministic.
Alignment align(const TokenSeq& hyp, const TokenSeq& ref);

/// Levenshtein distance with unit costs (two-row DP, no backtrace).
std::size_t edit_distance(const TokenSeq& hyp, const TokenSeq& ref);

struct WerBreakdown {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_len = 0;

  std::size_t errors() const noexcept { return substitutions + deletions + insertions; }
  /// errors / ref_len. An empty reference scores 0 without errors, 1 with any.
  double rate() const noexcept;

  WerBreakdown& operator+=(const WerBreakdown& other) noexcept;
  friend bool operator==(const WerBreakdown&, const WerBreakdown&) = default;
};

WerBreakdown breakdown(const Alignment& alignment) noexcept;

/// Error counts without the empty-reference check; used for pooled scoring.
WerBreakdown score_counts(const TokenSeq& hyp, const TokenSeq& ref);

struct EmptyReference {
  std::size_t hyp_len = 0;
};

/// Fails with EmptyReference when ref is empty but hyp is not.
Expected<WerBreakdown, EmptyReference> wer(const TokenSeq& hyp, const TokenSeq& ref);

}  // namespace ceger
