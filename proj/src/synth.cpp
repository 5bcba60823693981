#include "ceger/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

namespace ceger {

namespace {

constexpr std::string_view kVocabulary[] = {
    "the",     "of",      "and",     "to",      "a",       "in",      "that",    "he",      "was",     "it",
    "his",     "i",       "with",    "as",      "had",     "for",     "you",     "her",     "not",     "but",
    "at",      "she",     "be",      "on",      "is",      "him",     "they",    "by",      "all",     "this",
    "my",      "which",   "said",    "from",    "so",      "have",    "were",    "one",     "we",      "me",
    "there",   "no",      "their",   "when",    "or",      "an",      "them",    "would",   "if",      "what",
    "been",    "are",     "who",     "will",    "then",    "could",   "into",    "out",     "up",      "more",
    "man",     "little",  "some",    "very",    "upon",    "now",     "time",    "about",   "did",     "like",
    "great",   "only",    "old",     "than",    "any",     "over",    "good",    "before",  "came",    "know",
    "see",     "after",   "made",    "down",    "way",     "day",     "well",    "such",    "long",    "men",
    "again",   "never",   "your",    "much",    "its",     "other",   "how",     "where",   "these",   "must",
    "first",   "might",   "through", "back",    "say",     "eyes",    "go",      "himself", "still",   "house",
    "hand",    "thought", "away",    "face",    "come",    "think",   "night",   "life",    "went",    "young",
    "room",    "without", "head",    "here",    "nothing", "light",   "door",    "place",   "heart",   "while",
    "water",   "left",    "mother",  "voice",   "looked",  "found",   "world",   "father",  "saw",     "took",
    "under",   "another", "once",    "small",   "people",  "seemed",  "moment",  "turned",  "word",    "church",
    "store",   "market",  "bought",  "apples",  "red",     "garden",  "river",   "letter",  "morning", "window",
};

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// A vocabulary word absent from `avoid`; falls back to numbered filler words.
std::string fresh_word(std::mt19937_64& rng, const std::unordered_set<std::string>& avoid) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::string w(kVocabulary[pick(rng, std::size(kVocabulary))]);
    if (!avoid.contains(w)) return w;
  }
  for (std::size_t k = pick(rng, 1000);; ++k) {
    std::string w = "w" + std::to_string(k);
    if (!avoid.contains(w)) return w;
  }
}

}  // namespace

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream));
}

std::uint64_t stable_hash(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double unit_uniform(std::mt19937_64& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void validate(const ErrorRates& rates) {
  for (double r : {rates.substitution, rates.insertion, rates.deletion}) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw BadRates("error rates must be finite and >= 0");
  }
  if (rates.substitution + rates.insertion + rates.deletion > 1.0 + 1e-12) {
    throw BadRates("error rates must sum to at most 1");
  }
}

std::span<const std::string_view> builtin_vocabulary() noexcept { return kVocabulary; }

std::vector<std::string> generate_source_texts(std::size_t count, std::size_t min_len, std::size_t max_len,
                                               std::uint64_t seed) {
  if (min_len == 0 || max_len < min_len) throw std::invalid_argument("sentence lengths must satisfy 1 <= min <= max");
  std::vector<double> weights;
  for (std::size_t rank = 1; rank <= std::size(kVocabulary); ++rank) weights.push_back(1.0 / static_cast<double>(rank));
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  const double total = cumulative.back();

  std::vector<std::string> texts;
  texts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = make_rng(seed, i);
    const std::size_t len = min_len + pick(rng, max_len - min_len + 1);
    std::vector<std::string> words;
    for (std::size_t k = 0; k < len; ++k) {
      const double u = unit_uniform(rng) * total;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const auto index = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), weights.size() - 1);
      words.emplace_back(kVocabulary[index]);
    }
    texts.push_back(join_words(words));
  }
  return texts;
}

std::vector<CorpusRecord> synthesize_corpus(std::span<const std::string> source_texts, const ErrorRates& rates,
                                            std::uint64_t seed) {
  validate(rates);
  std::vector<CorpusRecord> records;
  records.reserve(source_texts.size());
  for (std::size_t i = 0; i < source_texts.size(); ++i) {
    const TokenSeq ref = tokenize(source_texts[i]);
    const std::unordered_set<std::string> in_ref(ref.begin(), ref.end());
    auto rng = make_rng(seed, i);

    std::vector<std::string> hyp;
    for (const auto& w : ref) {
      const double u = unit_uniform(rng);
      if (u < rates.substitution) {
        hyp.push_back(fresh_word(rng, in_ref));
      } else if (u < rates.substitution + rates.deletion) {
        // dropped by the recognizer
      } else if (u < rates.substitution + rates.deletion + rates.insertion) {
        hyp.push_back(w);
        hyp.push_back(fresh_word(rng, in_ref));
      } else {
        hyp.push_back(w);
      }
    }

    char id[32];
    std::snprintf(id, sizeof id, "utt-%06zu", i + 1);
    records.push_back(CorpusRecord{id, join_words(hyp), detokenize(ref), {}});
  }
  return records;
}

std::vector<Command> perturb_commands(std::span<const Command> commands, const NoiseConfig& config,
                                      std::string_view record_id, const TokenSeq& hyp) {
  if (!(config.rate >= 0.0 && config.rate <= 1.0)) throw std::invalid_argument("noise rate must be in [0, 1]");

  enum class Perturbation { Drop, OffByOne, WordSwap };
  std::vector<Perturbation> enabled;
  if (config.drop) enabled.push_back(Perturbation::Drop);
  if (config.off_by_one) enabled.push_back(Perturbation::OffByOne);
  if (config.word_swap) enabled.push_back(Perturbation::WordSwap);

  auto rng = make_rng(config.seed, stable_hash(record_id));
  std::vector<Command> out;
  out.reserve(commands.size());
  for (const Command& c : commands) {
    const double u = unit_uniform(rng);
    const std::uint64_t choice = rng();
    const std::uint64_t param = rng();
    if (u >= config.rate || enabled.empty()) {
      out.push_back(c);
      continue;
    }

    Perturbation p = enabled[choice % enabled.size()];
    const bool has_payload = !c.words().empty();
    if (p == Perturbation::OffByOne && c.kind() == CommandKind::Insert) p = Perturbation::WordSwap;
    if (p == Perturbation::WordSwap && !has_payload) p = Perturbation::OffByOne;

    switch (p) {
      case Perturbation::Drop:
        break;
      case Perturbation::OffByOne: {
        const std::size_t n = (param % 2 == 0 && c.count() > 1) ? c.count() - 1 : c.count() + 1;
        if (c.kind() == CommandKind::MoveForward) out.push_back(Command::move_forward(n));
        else if (c.kind() == CommandKind::Delete) out.push_back(Command::remove(n));
        else out.push_back(Command::replace(n, c.words()));
        break;
      }
      case Perturbation::WordSwap: {
        auto words = c.words();
        const std::size_t slot = param % words.size();
        std::string replacement = hyp.empty() ? std::string("<unk>") : hyp[(param / words.size()) % hyp.size()];
        if (replacement == words[slot]) replacement = "<unk>";
        words[slot] = std::move(replacement);
        out.push_back(c.kind() == CommandKind::Insert ? Command::insert(std::move(words))
                                                       : Command::replace(c.count(), std::move(words)));
        break;
      }
    }
  }
  return out;
}

}  // namespace ceger
