// Serial reference vs OpenMP kernels. Thread count comes from
// OMP_NUM_THREADS or the second range argument.

#include <benchmark/benchmark.h>

#include "ceger/aligner.hpp"
#include "ceger/metrics.hpp"
#include "ceger/pipeline.hpp"
#include "ceger/synth.hpp"

namespace {

using namespace ceger;

std::vector<CorpusRecord> corpus(std::size_t n) {
  return synthesize_corpus(generate_source_texts(n, 5, 30, 1), ErrorRates{}, 1);
}

void BM_PipelineSerial(benchmark::State& state) {
  const auto records = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline_serial(records, PipelineOptions{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PipelineSerial)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_PipelineParallel(benchmark::State& state) {
  const auto records = corpus(static_cast<std::size_t>(state.range(0)));
  PipelineOptions options;
  options.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(records, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PipelineParallel)->Args({1000, 1})->Args({1000, 2})->Args({1000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SummarizeSerial(benchmark::State& state) {
  const auto annotated = run_pipeline(corpus(static_cast<std::size_t>(state.range(0))), PipelineOptions{});
  for (auto _ : state) benchmark::DoNotOptimize(summarize_serial(annotated, Method::Ceger));
}
BENCHMARK(BM_SummarizeSerial)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SummarizeParallel(benchmark::State& state) {
  const auto annotated = run_pipeline(corpus(static_cast<std::size_t>(state.range(0))), PipelineOptions{});
  const ScoringOptions options{false, static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(summarize(annotated, Method::Ceger, options));
}
BENCHMARK(BM_SummarizeParallel)->Args({1000, 1})->Args({1000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Align(benchmark::State& state) {
  const auto records = corpus(64);
  std::vector<std::pair<TokenSeq, TokenSeq>> pairs;
  for (const auto& r : records) pairs.emplace_back(tokenize(r.asr), tokenize(r.ref));
  for (auto _ : state) {
    for (const auto& [h, r] : pairs) benchmark::DoNotOptimize(align(h, r));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pairs.size()));
}
BENCHMARK(BM_Align);

}  // namespace

BENCHMARK_MAIN();
