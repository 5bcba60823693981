#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "ceger/metrics.hpp"
#include "ceger/pipeline.hpp"
#include "ceger/synth.hpp"
#include "json.hpp"

using namespace ceger;
using Catch::Matchers::WithinAbs;

namespace {

// The payload token count is set to the output word count; only the average matters here.
CorpusRecord with_output(std::string id, std::string asr, std::string ref, Method m, std::string output) {
  CorpusRecord r{std::move(id), std::move(asr), std::move(ref), {}};
  const std::size_t tokens = tokenize(output).size();
  r.results[m] = MethodResult{"", tokens, std::move(output), std::nullopt};
  return r;
}

std::string numbered(int n, int changed_every = 0, int changed_count = 0) {
  std::string s;
  int changed = 0;
  for (int i = 0; i < n; ++i) {
    if (!s.empty()) s += ' ';
    if (changed_every && i % changed_every == 0 && changed < changed_count) {
      s += "zz" + std::to_string(i);
      ++changed;
    } else {
      s += "w" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("perfect output gives full reduction", "[metrics]") {
  const std::vector<CorpusRecord> records{with_output("a", "x b c", "a b c", Method::FullRewrite, "a b c"),
                                          with_output("b", "p", "p q", Method::FullRewrite, "p q")};
  const auto s = summarize(records, Method::FullRewrite);
  CHECK(s.corpus_wer == 0.0);
  REQUIRE(s.relative_reduction);
  CHECK(*s.relative_reduction == 1.0);
  CHECK(s.avg_output_len == 2.5);
  CHECK(s.records == 2);
}

TEST_CASE("unchanged output gives zero reduction", "[metrics]") {
  const std::vector<CorpusRecord> records{with_output("a", "a b", "a c", Method::Ceger, "a b")};
  const auto s = summarize(records, Method::Ceger);
  CHECK(s.corpus_wer == 0.5);
  REQUIRE(s.relative_reduction);
  CHECK(*s.relative_reduction == 0.0);
}

TEST_CASE("reduction from 6.6% to 2.6%", "[metrics]") {
  // 500 reference words, 33 wrong in the ASR text, 13 wrong after correction.
  const auto ref = numbered(500);
  const std::vector<CorpusRecord> records{
      with_output("a", numbered(500, 15, 33), ref, Method::Ceger, numbered(500, 15, 13))};
  const auto asr = asr_counts(records);
  CHECK(asr.errors() == 33);
  const auto s = summarize(records, Method::Ceger);
  CHECK_THAT(s.corpus_wer, WithinAbs(0.026, 1e-12));
  REQUIRE(s.relative_reduction);
  CHECK_THAT(*s.relative_reduction, WithinAbs(20.0 / 33.0, 1e-12));
  CHECK_THAT(*s.relative_reduction, WithinAbs(0.606, 5e-4));
}

TEST_CASE("reduction is undefined when ASR is already perfect", "[metrics]") {
  const std::vector<CorpusRecord> worse{with_output("a", "a b", "a b", Method::Span, "a")};
  CHECK_FALSE(summarize(worse, Method::Span).relative_reduction);
  const std::vector<CorpusRecord> same{with_output("a", "a b", "a b", Method::Span, "a b")};
  CHECK(summarize(same, Method::Span).relative_reduction == 0.0);
}

TEST_CASE("failures fall back to the ASR text", "[metrics]") {
  CorpusRecord failed{"a", "a b", "a c", {}};
  failed.results[Method::Ceger] = MethodResult{"[JUMP]", 1, std::nullopt, ExpandFailure{"Parse", "bad"}};
  const CorpusRecord missing{"b", "p q", "p q", {}};
  const std::vector<CorpusRecord> records{failed, missing};
  const auto s = summarize(records, Method::Ceger);
  CHECK(s.failures == 2);
  CHECK(s.counts.errors() == 1);
  CHECK(s.counts.ref_len == 4);
  CHECK(s.avg_output_len == 1.0);
}

TEST_CASE("scoring normalization flags", "[metrics]") {
  const std::vector<CorpusRecord> records{with_output("a", "The dog barked, loudly", "the dog barked loudly .",
                                                      Method::Ceger, "The dog barked loudly.")};
  CHECK(asr_counts(records).errors() == 3);
  CHECK(asr_counts(records, ScoringOptions{true, 0, false}).errors() == 2);
  const ScoringOptions both{true, 0, true};
  const auto asr = asr_counts(records, both);
  CHECK(asr.errors() == 0);
  CHECK(asr.ref_len == 4);
  CHECK(summarize(records, Method::Ceger, both).corpus_wer == 0.0);
  CHECK(summarize(records, Method::Ceger, ScoringOptions{false, 0, true}).counts.errors() == 1);
}

TEST_CASE("empty corpus is rejected", "[metrics]") {
  const std::vector<CorpusRecord> none;
  CHECK_THROWS_AS(summarize(none, Method::Ceger), EmptyCorpus);
  CHECK_THROWS_AS(distribution(none), EmptyCorpus);
  CHECK_THROWS_AS(build_report(none, "x"), EmptyCorpus);
}

TEST_CASE("command distribution of the worked example", "[metrics]") {
  CorpusRecord r{"a", "I went to the store and bought apples.", "I went to the market and bought red apples.", {}};
  const auto annotated = run_pipeline(std::vector{r}, PipelineOptions{});
  const auto d = distribution(annotated);
  const auto pct = d.percentages();
  CHECK(d.stats.total() == 5);
  CHECK_THAT(pct[static_cast<std::size_t>(CommandKind::MoveForward)], WithinAbs(60.0, 1e-9));
  CHECK_THAT(pct[static_cast<std::size_t>(CommandKind::Replace)], WithinAbs(20.0, 1e-9));
  CHECK_THAT(pct[static_cast<std::size_t>(CommandKind::Insert)], WithinAbs(20.0, 1e-9));
  CHECK(pct[static_cast<std::size_t>(CommandKind::Delete)] == 0.0);
  CHECK(DistributionSummary{}.percentages() == std::array<double, 4>{0, 0, 0, 0});
}

TEST_CASE("report rendering", "[metrics][report]") {
  const auto corpus = synthesize_corpus(generate_source_texts(60, 5, 15, 4), ErrorRates{}, 4);
  const auto annotated = run_pipeline(corpus, PipelineOptions{});
  const auto report = build_report(annotated, "synthetic");
  REQUIRE(report.methods.size() == std::size(kAllMethods));
  for (std::size_t i = 0; i < report.methods.size(); ++i) CHECK(report.methods[i].method == kAllMethods[i]);

  const auto table = emit_report(report, ReportFormat::Table);
  CHECK(table.find("method") != std::string::npos);
  CHECK(table.find("WER (%)") != std::string::npos);
  CHECK(table.find("reduction") != std::string::npos);
  CHECK(table.find("avg output length") != std::string::npos);
  CHECK(table.find("MOVE_FORWARD") != std::string::npos);
  CHECK(table == emit_report(report, ReportFormat::Table));

  const auto text = emit_report(report, ReportFormat::Json);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["corpus"] == "synthetic");
  REQUIRE(doc["methods"].size() == std::size(kAllMethods));
  CHECK(doc["methods"][0]["method"] == "ceger");
  CHECK_THAT(doc["methods"][0]["wer"].get<double>(), WithinAbs(report.methods[0].corpus_wer, 1e-15));
  CHECK(doc.dump(2) + "\n" == text);
}

TEST_CASE("report with only a header still renders", "[metrics][report]") {
  const std::vector<CorpusRecord> records{{"a", "x", "x", {}}};
  const auto report = build_report(records, "bare");
  CHECK(report.methods.empty());
  const auto table = emit_report(report, ReportFormat::Table);
  CHECK(std::count(table.begin(), table.end(), '\n') == 4);
  CHECK(table.find("\nasr ") != std::string::npos);
}

TEST_CASE("parallel summarize matches the serial reference and record order", "[metrics][parallel]") {
  const auto corpus = synthesize_corpus(generate_source_texts(400, 3, 25, 17), ErrorRates{0.1, 0.05, 0.05}, 17);
  PipelineOptions options;
  options.noise = NoiseConfig{3, 0.2};
  auto annotated = run_pipeline(corpus, options);
  for (Method m : kAllMethods) {
    const auto serial = summarize_serial(annotated, m);
    for (int threads : {1, 3, 8}) {
      const auto par = summarize(annotated, m, ScoringOptions{false, threads});
      CHECK(par.counts == serial.counts);
      CHECK(par.failures == serial.failures);
      CHECK(par.corpus_wer == serial.corpus_wer);
    }
  }
  const auto before = summarize_serial(annotated, Method::Ceger);
  std::shuffle(annotated.begin(), annotated.end(), std::mt19937_64(1));
  const auto after = summarize(annotated, Method::Ceger);
  CHECK(after.counts == before.counts);
  CHECK(after.failures == before.failures);
}
