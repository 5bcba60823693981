#include "ceger/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "ceger/aligner.hpp"
#include "ceger/baselines.hpp"
#include "ceger/corpus.hpp"
#include "ceger/engine.hpp"
#include "ceger/metrics.hpp"
#include "ceger/pipeline.hpp"
#include "ceger/synth.hpp"
#include "json.hpp"

namespace ceger {

namespace {

using nlohmann::json;

// Raised for bad input data (as opposed to bad flags); maps to kExitData.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string hyp;
  std::string ref;
  std::string hyp_file;
  std::string payload;
  std::string payload_file;
  std::string annotated;
  std::string corpus_name;
  std::string method;
  std::string mode = "lenient";
  std::string format = "table";
  bool lowercase = false;
  bool strip_punct = false;
  std::optional<double> noise_rate;
  std::uint64_t seed = 0;
  int threads = 0;
  std::size_t count = 1000;
  std::size_t min_len = 8;
  std::size_t max_len = 30;
  ErrorRates rates;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::vector<Method> selected_methods(const std::string& name) {
  if (name == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};
  return {*parse_method(name)};
}

ExpandMode selected_mode(const std::string& name) { return name == "strict" ? ExpandMode::Strict : ExpandMode::Lenient; }

// Writes to --output when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw DataError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

bool single_pair(const Options& o) { return !o.hyp.empty() || !o.ref.empty(); }

std::vector<CorpusRecord> load_input(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  return load_corpus(o.input);
}

// --- align -----------------------------------------------------------------

json ops_json(const Alignment& a) {
  json ops = json::array();
  for (const auto& op : a.ops) {
    ops.push_back({std::string(to_string(op.kind())), join_words(op.hyp_words()), join_words(op.ref_words())});
  }
  return ops;
}

int cmd_align(const Options& o, std::ostream& out) {
  Sink sink(o.output, out);
  if (single_pair(o)) {
    const TokenSeq hyp = tokenize(o.hyp, o.lowercase);
    const TokenSeq ref = tokenize(o.ref, o.lowercase);
    const Alignment a = align(hyp, ref);
    for (const auto& op : a.ops) {
      *sink << to_string(op.kind()) << '\t' << join_words(op.hyp_words()) << '\t' << join_words(op.ref_words())
            << '\n';
    }
    const WerBreakdown b = breakdown(a);
    *sink << "distance=" << a.distance() << " S=" << b.substitutions << " D=" << b.deletions
          << " I=" << b.insertions << " ref_len=" << b.ref_len;
    if (auto w = wer(hyp, ref)) *sink << " wer=" << w->rate();
    *sink << '\n';
    return kExitOk;
  }
  for (const auto& r : load_input(o)) {
    const Alignment a = align(tokenize(r.asr, o.lowercase), tokenize(r.ref, o.lowercase));
    const WerBreakdown b = breakdown(a);
    json line = {{"id", r.id},
                 {"distance", a.distance()},
                 {"substitutions", b.substitutions},
                 {"deletions", b.deletions},
                 {"insertions", b.insertions},
                 {"ref_len", b.ref_len},
                 {"ops", ops_json(a)}};
    *sink << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
  return kExitOk;
}

// --- compile ---------------------------------------------------------------

int cmd_compile(const Options& o, std::ostream& out) {
  Sink sink(o.output, out);
  const auto methods = selected_methods(o.method.empty() ? "ceger" : o.method);
  if (single_pair(o)) {
    const Alignment a = align(tokenize(o.hyp, o.lowercase), tokenize(o.ref, o.lowercase));
    for (Method m : methods) {
      if (methods.size() > 1) *sink << method_name(m) << '\t';
      *sink << compile_representation(m, a).payload << '\n';
    }
    return kExitOk;
  }
  for (const auto& r : load_input(o)) {
    const Alignment a = align(tokenize(r.asr, o.lowercase), tokenize(r.ref, o.lowercase));
    for (Method m : methods) {
      const Representation rep = compile_representation(m, a);
      json line = {{"id", r.id}, {"method", std::string(method_name(m))}, {"payload", rep.payload},
                   {"tokens", rep.token_count}};
      *sink << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    }
  }
  return kExitOk;
}

// --- expand ----------------------------------------------------------------

int cmd_expand(const Options& o, std::ostream& out, std::ostream& err) {
  Sink sink(o.output, out);
  const Method method = *parse_method(o.method.empty() ? "ceger" : o.method);
  const ExpandMode mode = selected_mode(o.mode);

  if (o.input.empty()) {
    if (o.hyp.empty() == o.hyp_file.empty()) throw UsageError("give exactly one of --hyp or --hyp-file");
    if (o.payload.empty() == o.payload_file.empty()) {
      throw UsageError("give exactly one of --payload or --payload-file");
    }
    const std::string hyp_text = o.hyp_file.empty() ? o.hyp : read_file(o.hyp_file);
    const std::string payload = o.payload_file.empty() ? o.payload : strip_newline(read_file(o.payload_file));
    auto result = expand_payload(method, tokenize(hyp_text, o.lowercase), payload, mode);
    if (!result) {
      err << "error: " << result.error().message << '\n';
      return kExitData;
    }
    *sink << detokenize(*result) << '\n';
    return kExitOk;
  }

  std::ifstream in(o.input);
  if (!in) throw DataError("cannot open " + o.input);
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error&) {
      throw DataError("line " + std::to_string(line_no) + ": invalid JSON");
    }
    if (!obj.is_object() || !obj.contains("asr") || !obj["asr"].is_string() || !obj.contains("payload") ||
        !obj["payload"].is_string()) {
      throw DataError("line " + std::to_string(line_no) + ": expected string keys \"asr\" and \"payload\"");
    }
    json line = json::object();
    if (obj.contains("id")) line["id"] = obj["id"];
    auto result = expand_payload(method, tokenize(obj["asr"].get<std::string>(), o.lowercase),
                                 obj["payload"].get<std::string>(), mode);
    if (result) {
      line["output"] = detokenize(*result);
    } else {
      line["error"] = {{"code", result.error().code}, {"message", result.error().message}};
    }
    *sink << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
  return kExitOk;
}

// --- synthesize ------------------------------------------------------------

int cmd_synthesize(const Options& o, std::ostream& out) {
  validate(o.rates);
  std::vector<std::string> sources;
  if (!o.input.empty()) {
    std::istringstream lines(read_file(o.input));
    for (std::string line; std::getline(lines, line);) {
      if (!tokenize(line).empty()) sources.push_back(line);
    }
  } else {
    if (o.min_len == 0 || o.max_len < o.min_len) throw UsageError("need 1 <= --min-len <= --max-len");
    sources = generate_source_texts(o.count, o.min_len, o.max_len, o.seed);
  }
  const auto records = synthesize_corpus(sources, o.rates, o.seed);
  Sink sink(o.output, out);
  write_corpus(*sink, records);
  return kExitOk;
}

// --- score / report ----------------------------------------------------------

std::string corpus_label(const Options& o) {
  if (!o.corpus_name.empty()) return o.corpus_name;
  return std::filesystem::path(o.input).stem().string();
}

ReportFormat selected_format(const std::string& name) { return name == "json" ? ReportFormat::Json : ReportFormat::Table; }

int cmd_score(const Options& o, std::ostream& out) {
  const auto records = load_input(o);
  if (records.empty()) throw DataError("corpus has no records");

  PipelineOptions pipeline;
  pipeline.methods = selected_methods(o.method.empty() ? "all" : o.method);
  pipeline.mode = selected_mode(o.mode);
  pipeline.lowercase = o.lowercase;
  pipeline.threads = o.threads;
  if (o.noise_rate) pipeline.noise = NoiseConfig{o.seed, *o.noise_rate};
  const auto annotated = run_pipeline(records, pipeline);

  if (!o.annotated.empty()) save_corpus(o.annotated, annotated);
  const Report report = build_report(annotated, corpus_label(o), ScoringOptions{o.lowercase, o.threads, o.strip_punct});
  Sink sink(o.output, out);
  *sink << emit_report(report, selected_format(o.format));
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const auto records = load_input(o);
  if (records.empty()) throw DataError("corpus has no records");
  const Report report = build_report(records, corpus_label(o), ScoringOptions{o.lowercase, o.threads, o.strip_punct});
  Sink sink(o.output, out);
  *sink << emit_report(report, selected_format(o.format));
  return kExitOk;
}

// --- flag wiring -------------------------------------------------------------

const std::vector<std::string> kMethodChoices = {"ceger", "full", "span", "phrase", "target", "all"};
const std::vector<std::string> kSingleMethodChoices = {"ceger", "full", "span", "phrase", "target"};

void add_io(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Input file");
  sub->add_option("--output", o.output, "Output file (default: stdout)");
  sub->add_flag("--lowercase", o.lowercase, "Lowercase tokens before processing");
}

void add_pair(CLI::App* sub, Options& o) {
  sub->add_option("--hyp", o.hyp, "Hypothesis text (single-pair mode)");
  sub->add_option("--ref", o.ref, "Reference text (single-pair mode)");
}

void add_report_flags(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"table", "json"}));
  sub->add_option("--corpus-name", o.corpus_name, "Corpus label in the report (default: input file stem)");
  sub->add_option("--threads", o.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  sub->add_flag("--strip-punct", o.strip_punct, "Ignore leading/trailing punctuation when scoring");
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CEGER edit-representation toolkit", "ceger"};
  app.require_subcommand(1);
  Options o;

  auto* align_cmd = app.add_subcommand("align", "Word-level Levenshtein alignment and WER");
  add_io(align_cmd, o);
  add_pair(align_cmd, o);

  auto* compile_cmd = app.add_subcommand("compile", "Compile (hyp, ref) pairs into edit payloads");
  add_io(compile_cmd, o);
  add_pair(compile_cmd, o);
  compile_cmd->add_option("--method", o.method, "Representation (default: ceger)")->check(CLI::IsMember(kMethodChoices));

  auto* expand_cmd = app.add_subcommand("expand", "Apply a payload to a hypothesis");
  add_io(expand_cmd, o);
  expand_cmd->add_option("--hyp", o.hyp, "Hypothesis text");
  expand_cmd->add_option("--hyp-file", o.hyp_file, "File holding the hypothesis text");
  expand_cmd->add_option("--payload", o.payload, "Payload text");
  expand_cmd->add_option("--payload-file", o.payload_file, "File holding the payload text");
  expand_cmd->add_option("--method", o.method, "Representation (default: ceger)")
      ->check(CLI::IsMember(kSingleMethodChoices));
  expand_cmd->add_option("--mode", o.mode, "CEGER expansion mode")->check(CLI::IsMember({"strict", "lenient"}));

  auto* synth_cmd = app.add_subcommand("synthesize", "Generate a synthetic (asr, ref) corpus");
  synth_cmd->add_option("--input", o.input, "Reference sentences, one per line (default: generated)");
  synth_cmd->add_option("--output", o.output, "Output JSONL (default: stdout)");
  synth_cmd->add_option("--seed", o.seed, "Random seed");
  synth_cmd->add_option("--count", o.count, "Generated sentence count");
  synth_cmd->add_option("--min-len", o.min_len, "Minimum generated sentence length");
  synth_cmd->add_option("--max-len", o.max_len, "Maximum generated sentence length");
  synth_cmd->add_option("--sub-rate", o.rates.substitution, "Per-word substitution probability");
  synth_cmd->add_option("--ins-rate", o.rates.insertion, "Per-word insertion probability");
  synth_cmd->add_option("--del-rate", o.rates.deletion, "Per-word deletion probability");

  auto* score_cmd = app.add_subcommand("score", "Run the pipeline over a corpus and report");
  add_io(score_cmd, o);
  add_report_flags(score_cmd, o);
  score_cmd->add_option("--method", o.method, "Methods to run (default: all)")->check(CLI::IsMember(kMethodChoices));
  score_cmd->add_option("--mode", o.mode, "CEGER expansion mode")->check(CLI::IsMember({"strict", "lenient"}));
  score_cmd->add_option("--noise-rate", o.noise_rate, "Use the noisy generator with this per-command rate")
      ->check(CLI::Range(0.0, 1.0));
  score_cmd->add_option("--seed", o.seed, "Noise seed");
  score_cmd->add_option("--annotated", o.annotated, "Also write the annotated corpus here");

  auto* report_cmd = app.add_subcommand("report", "Report on an annotated corpus");
  add_io(report_cmd, o);
  add_report_flags(report_cmd, o);

  std::vector<std::string> argv_storage{"ceger"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*align_cmd) return cmd_align(o, out);
    if (*compile_cmd) return cmd_compile(o, out);
    if (*expand_cmd) return cmd_expand(o, out, err);
    if (*synth_cmd) return cmd_synthesize(o, out);
    if (*score_cmd) return cmd_score(o, out);
    if (*report_cmd) return cmd_report(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BadRates& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CorpusError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ceger
