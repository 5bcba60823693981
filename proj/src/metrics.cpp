#include "ceger/metrics.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "ceger/grammar.hpp"
#include "json.hpp"

namespace ceger {

namespace {

TokenSeq scoring_tokens(const std::string& text, const ScoringOptions& options) {
  TokenSeq seq = tokenize(text, options.lowercase);
  if (!options.strip_punctuation) return seq;
  const auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  std::vector<std::string> words;
  for (const auto& w : seq) {
    const auto first = std::find_if_not(w.begin(), w.end(), punct);
    const auto last = std::find_if_not(w.rbegin(), w.rend(), punct).base();
    if (first < last) words.emplace_back(first, last);
  }
  return TokenSeq(std::move(words));
}

struct RecordScore {
  WerBreakdown counts;
  bool failed = false;
  bool has_result = false;
  std::size_t tokens = 0;
};

RecordScore score_record(const CorpusRecord& record, Method method, const ScoringOptions& options) {
  RecordScore score;
  const TokenSeq ref = scoring_tokens(record.ref, options);
  const auto it = record.results.find(method);
  const std::string* output = &record.asr;
  if (it == record.results.end()) {
    score.failed = true;
  } else {
    score.has_result = true;
    score.tokens = it->second.token_count;
    if (it->second.output && !it->second.error) {
      output = &*it->second.output;
    } else {
      score.failed = true;
    }
  }
  score.counts = score_counts(scoring_tokens(*output, options), ref);
  return score;
}

MethodSummary finish(Method method, const WerBreakdown& counts, const WerBreakdown& asr, std::size_t failures,
                     std::size_t token_sum, std::size_t with_result, std::size_t records) {
  MethodSummary s;
  s.method = method;
  s.counts = counts;
  s.corpus_wer = counts.rate();
  s.avg_output_len = with_result ? static_cast<double>(token_sum) / static_cast<double>(with_result) : 0.0;
  s.failures = failures;
  s.records = records;
  if (asr.errors() > 0) {
    s.relative_reduction = (asr.rate() - s.corpus_wer) / asr.rate();
  } else if (counts.errors() == 0) {
    s.relative_reduction = 0.0;
  }
  return s;
}

int thread_count(const ScoringOptions& options) { return options.threads > 0 ? options.threads : omp_get_max_threads(); }

}  // namespace

WerBreakdown asr_counts(std::span<const CorpusRecord> records, const ScoringOptions& options) {
  std::size_t subs = 0, dels = 0, ins = 0, ref_len = 0;
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count(options)) reduction(+ : subs, dels, ins, ref_len)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    const auto c = score_counts(scoring_tokens(r.asr, options), scoring_tokens(r.ref, options));
    subs += c.substitutions;
    dels += c.deletions;
    ins += c.insertions;
    ref_len += c.ref_len;
  }
  return WerBreakdown{subs, dels, ins, ref_len};
}

MethodSummary summarize(std::span<const CorpusRecord> records, Method method, const ScoringOptions& options) {
  if (records.empty()) throw EmptyCorpus();
  std::size_t subs = 0, dels = 0, ins = 0, ref_len = 0, failures = 0, tokens = 0, with_result = 0;
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count(options)) \
    reduction(+ : subs, dels, ins, ref_len, failures, tokens, with_result)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const RecordScore s = score_record(records[static_cast<std::size_t>(i)], method, options);
    subs += s.counts.substitutions;
    dels += s.counts.deletions;
    ins += s.counts.insertions;
    ref_len += s.counts.ref_len;
    failures += s.failed ? 1 : 0;
    tokens += s.tokens;
    with_result += s.has_result ? 1 : 0;
  }
  return finish(method, WerBreakdown{subs, dels, ins, ref_len}, asr_counts(records, options), failures, tokens,
                with_result, records.size());
}

MethodSummary summarize_serial(std::span<const CorpusRecord> records, Method method, const ScoringOptions& options) {
  if (records.empty()) throw EmptyCorpus();
  WerBreakdown counts;
  WerBreakdown asr;
  std::size_t failures = 0, tokens = 0, with_result = 0;
  for (const auto& r : records) {
    const RecordScore s = score_record(r, method, options);
    counts += s.counts;
    asr += score_counts(scoring_tokens(r.asr, options), scoring_tokens(r.ref, options));
    failures += s.failed ? 1 : 0;
    tokens += s.tokens;
    with_result += s.has_result ? 1 : 0;
  }
  return finish(method, counts, asr, failures, tokens, with_result, records.size());
}

std::array<double, 4> DistributionSummary::percentages() const noexcept {
  std::array<double, 4> out{};
  const std::size_t total = stats.total();
  if (total == 0) return out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = 100.0 * static_cast<double>(stats.counts[k]) / static_cast<double>(total);
  }
  return out;
}

DistributionSummary distribution(std::span<const CorpusRecord> records) {
  if (records.empty()) throw EmptyCorpus();
  DistributionSummary d;
  for (const auto& r : records) {
    const auto it = r.results.find(Method::Ceger);
    if (it == r.results.end()) continue;
    if (auto commands = parse(it->second.payload)) d.stats += command_stats(*commands);
  }
  return d;
}

Report build_report(std::span<const CorpusRecord> records, std::string corpus_name, const ScoringOptions& options) {
  if (records.empty()) throw EmptyCorpus();
  Report report;
  report.corpus = std::move(corpus_name);
  report.asr = asr_counts(records, options);
  for (Method m : kAllMethods) {
    const bool present = std::any_of(records.begin(), records.end(),
                                     [m](const CorpusRecord& r) { return r.results.contains(m); });
    if (present) report.methods.push_back(summarize(records, m, options));
  }
  report.ceger_distribution = distribution(records);
  return report;
}

namespace {

constexpr const char* kLengthUnit = "whitespace tokens of the serialized payload";

std::string format_reduction(const std::optional<double>& reduction) {
  if (!reduction) return "n/a";
  return fmt::format("{:+.1f}%", -100.0 * *reduction);
}

std::string emit_table(const Report& report) {
  std::string out;
  out += fmt::format("# corpus: {}  ASR WER: {:.2f}% ({}/{})\n", report.corpus, 100.0 * report.asr.rate(),
                     report.asr.errors(), report.asr.ref_len);
  out += fmt::format("# output length unit: {}\n", kLengthUnit);
  out += fmt::format("{:<8} {:>8} {:>10} {:>18} {:>9}\n", "method", "WER (%)", "reduction", "avg output length",
                     "failures");
  out += fmt::format("{:<8} {:>8.2f} {:>10} {:>18} {:>9}\n", "asr", 100.0 * report.asr.rate(), "-", "-", "-");
  for (const auto& s : report.methods) {
    out += fmt::format("{:<8} {:>8.2f} {:>10} {:>18.2f} {:>9}\n", method_name(s.method), 100.0 * s.corpus_wer,
                       format_reduction(s.relative_reduction), s.avg_output_len, s.failures);
  }
  if (report.ceger_distribution.stats.total() > 0) {
    const auto pct = report.ceger_distribution.percentages();
    out += "# CEGER command distribution:";
    for (CommandKind k : kAllCommandKinds) {
      out += fmt::format(" {} {:.1f}%", keyword(k), pct[static_cast<std::size_t>(k)]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const Report& report) {
  using nlohmann::json;
  json methods = json::array();
  for (const auto& s : report.methods) {
    json reduction = s.relative_reduction ? json(*s.relative_reduction) : json(nullptr);
    methods.push_back({{"method", std::string(method_name(s.method))},
                       {"wer", s.corpus_wer},
                       {"reduction", reduction},
                       {"avg_output_len", s.avg_output_len},
                       {"failures", s.failures}});
  }
  json dist = json::object();
  json counts = json::object();
  const auto pct = report.ceger_distribution.percentages();
  for (CommandKind k : kAllCommandKinds) {
    const auto idx = static_cast<std::size_t>(k);
    dist[std::string(keyword(k))] = pct[idx];
    counts[std::string(keyword(k))] = report.ceger_distribution.stats.counts[idx];
  }
  json doc = {{"corpus", report.corpus},
              {"asr_wer", report.asr.rate()},
              {"methods", std::move(methods)},
              {"ceger_distribution", std::move(dist)},
              {"ceger_command_counts", std::move(counts)},
              {"length_unit", kLengthUnit}};
  return doc.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(report) : emit_table(report);
}

}  // namespace ceger
