#include "ceger/pipeline.hpp"

#include <omp.h>

#include <stdexcept>

#include "ceger/aligner.hpp"
#include "ceger/engine.hpp"
#include "ceger/grammar.hpp"

namespace ceger {

namespace {

Representation generate(Method method, const Alignment& alignment, const TokenSeq& hyp, const CorpusRecord& record,
                        const PipelineOptions& options) {
  if (method == Method::Ceger && options.noise) {
    const auto commands = perturb_commands(compile(alignment), *options.noise, record.id, hyp);
    return Representation(Method::Ceger, serialize(commands));
  }
  return compile_representation(method, alignment);
}

void validate(const PipelineOptions& options) {
  if (options.noise && !(options.noise->rate >= 0.0 && options.noise->rate <= 1.0)) {
    throw std::invalid_argument("noise rate must be in [0, 1]");
  }
}

}  // namespace

CorpusRecord process_record(const CorpusRecord& record, const PipelineOptions& options) {
  CorpusRecord out = record;
  out.results.clear();
  const TokenSeq hyp = tokenize(record.asr, options.lowercase);
  const TokenSeq ref = tokenize(record.ref, options.lowercase);
  const Alignment alignment = align(hyp, ref);

  for (Method method : options.methods) {
    Representation rep = generate(method, alignment, hyp, record, options);
    MethodResult result;
    // The payload is always re-parsed from text; no in-memory shortcut.
    auto expanded = expand_payload(method, hyp, rep.payload, options.mode);
    if (expanded) {
      result.output = detokenize(*expanded);
    } else {
      result.error = expanded.error();
    }
    result.payload = std::move(rep.payload);
    result.token_count = rep.token_count;
    out.results[method] = std::move(result);
  }
  return out;
}

std::vector<CorpusRecord> run_pipeline_serial(std::span<const CorpusRecord> records, const PipelineOptions& options) {
  validate(options);
  std::vector<CorpusRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(process_record(r, options));
  return out;
}

std::vector<CorpusRecord> run_pipeline(std::span<const CorpusRecord> records, const PipelineOptions& options) {
  validate(options);
  std::vector<CorpusRecord> out(records.size());
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = process_record(records[static_cast<std::size_t>(i)], options);
  }
  return out;
}

}  // namespace ceger
