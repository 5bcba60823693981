#pragma once

// Corpus pipeline: align -> compile -> [noise] -> serialize -> parse ->
// expand, per record and per method.
//
// run_pipeline distributes records over OpenMP threads; run_pipeline_serial
// is the single-threaded reference it is tested against. Records are
// independent and each writes only its own output slot, so both produce
// identical results for any thread count.

#include <optional>
#include <span>
#include <vector>

#include "ceger/baselines.hpp"
#include "ceger/corpus.hpp"
#include "ceger/synth.hpp"

namespace ceger {

struct PipelineOptions {
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  std::optional<NoiseConfig> noise;  // nullopt: oracle generator
  ExpandMode mode = ExpandMode::Lenient;
  bool lowercase = false;
  int threads = 0;  // 0: OpenMP default
};

/// Annotates one record. Failures are stored in the record, never thrown.
CorpusRecord process_record(const CorpusRecord& record, const PipelineOptions& options);

std::vector<CorpusRecord> run_pipeline(std::span<const CorpusRecord> records, const PipelineOptions& options);
std::vector<CorpusRecord> run_pipeline_serial(std::span<const CorpusRecord> records, const PipelineOptions& options);

}  // namespace ceger
