#pragma once

// Corpus-level scoring: pooled WER per method, average output length,
// reduction relative to the raw ASR text, and the CEGER command mix.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ceger/aligner.hpp"
#include "ceger/corpus.hpp"
#include "ceger/engine.hpp"

namespace ceger {

class EmptyCorpus : public std::invalid_argument {
 public:
  EmptyCorpus() : std::invalid_argument("corpus has no records") {}
};

struct ScoringOptions {
  bool lowercase = false;
  int threads = 0;  // 0: OpenMP default
  /// Trim ASCII punctuation from both ends of every word before scoring;
  /// words that are all punctuation are dropped.
  bool strip_punctuation = false;
};

struct MethodSummary {
  Method method = Method::Ceger;
  WerBreakdown counts;  // pooled over the corpus
  double corpus_wer = 0.0;
  double avg_output_len = 0.0;
  /// (wer_asr - wer_method) / wer_asr. Unset when the raw ASR text is
  /// already perfect and the method is not; 0 when both are perfect.
  std::optional<double> relative_reduction;
  std::size_t failures = 0;
  std::size_t records = 0;
};

/// Pooled ASR-vs-reference counts.
WerBreakdown asr_counts(std::span<const CorpusRecord> records, const ScoringOptions& options = {});

/// Records whose expansion failed, or that carry no result for `method`,
/// are scored on their raw ASR text and counted as failures.
/// Throws EmptyCorpus.
MethodSummary summarize(std::span<const CorpusRecord> records, Method method, const ScoringOptions& options = {});
/// Single-threaded reference for summarize.
MethodSummary summarize_serial(std::span<const CorpusRecord> records, Method method,
                               const ScoringOptions& options = {});

struct DistributionSummary {
  CommandStats stats;
  /// Percentage per CommandKind; all zeros when there are no commands.
  std::array<double, 4> percentages() const noexcept;
};

/// Sums command_stats over every parseable CEGER payload. Throws EmptyCorpus.
DistributionSummary distribution(std::span<const CorpusRecord> records);

struct Report {
  std::string corpus;
  WerBreakdown asr;
  std::vector<MethodSummary> methods;
  DistributionSummary ceger_distribution;
};

/// Summaries for every method present in the records, in canonical order.
Report build_report(std::span<const CorpusRecord> records, std::string corpus_name, const ScoringOptions& options = {});

enum class ReportFormat { Table, Json };

/// Deterministic rendering. JSON keys are sorted; the table has one row per
/// method with WER, reduction, average output length and failures.
std::string emit_report(const Report& report, ReportFormat format);

}  // namespace ceger
