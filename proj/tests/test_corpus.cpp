#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ceger/aligner.hpp"
#include "ceger/corpus.hpp"
#include "ceger/synth.hpp"

using namespace ceger;

namespace {

std::vector<CorpusRecord> read_text(const std::string& text) {
  std::istringstream in(text);
  return read_corpus(in);
}

CorpusErrorKind error_kind(const std::string& text, std::size_t* line = nullptr) {
  try {
    read_text(text);
  } catch (const CorpusError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("expected CorpusError");
  return CorpusErrorKind::Io;
}

}  // namespace

TEST_CASE("read_corpus parses JSONL records in order", "[corpus]") {
  const auto records = read_text(
      "{\"id\": \"u1\", \"asr\": \"a b\", \"ref\": \"a c\"}\n"
      "\n"
      "{\"id\": \"u2\", \"asr\": \"\", \"ref\": \"x\", \"extra\": 1}\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].id == "u1");
  CHECK(records[0].ref == "a c");
  CHECK(records[1].asr.empty());
}

TEST_CASE("read_corpus reports schema problems with line numbers", "[corpus]") {
  std::size_t line = 0;
  CHECK(error_kind("{\"id\": \"u1\", \"asr\": \"a\", \"ref\": \"a\"}\n{\"id\": \"u2\", \"asr\": \"a\"}\n", &line) ==
        CorpusErrorKind::Schema);
  CHECK(line == 2);
  CHECK(error_kind("{\"id\": 3, \"asr\": \"a\", \"ref\": \"a\"}") == CorpusErrorKind::Schema);
  CHECK(error_kind("not json") == CorpusErrorKind::Schema);
  CHECK(error_kind("[1, 2]") == CorpusErrorKind::Schema);
  CHECK(error_kind("{\"id\": \"u\", \"asr\": \"a\", \"ref\": \"a\", \"results\": {\"nope\": {}}}") ==
        CorpusErrorKind::Schema);
  CHECK(error_kind("{\"id\": \"u\", \"asr\": \"a\", \"ref\": \"a\"}\n{\"id\": \"u\", \"asr\": \"b\", \"ref\": \"b\"}",
                   &line) == CorpusErrorKind::DuplicateId);
  CHECK(line == 2);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), CorpusError);
}

TEST_CASE("save_corpus and load_corpus round trip, including results", "[corpus]") {
  CorpusRecord plain{"u1", "it's a \"quote\"", "it is a quote", {}};
  CorpusRecord annotated{"u2", "a b", "a c", {}};
  annotated.results[Method::Ceger] = MethodResult{"[MOVE_FORWARD 1] [REPLACE 1 WITH 'c']", 6, "a c", std::nullopt};
  annotated.results[Method::Span] =
      MethodResult{"[SPAN 9 9 'x']", 4, std::nullopt, ExpandFailure{"SpanOutOfRange", "SpanOutOfRange at entry 0"}};
  const std::vector<CorpusRecord> records{plain, annotated};

  const auto path = std::filesystem::temp_directory_path() / "ceger_corpus_roundtrip.jsonl";
  save_corpus(path, records);
  const auto back = load_corpus(path);
  std::filesystem::remove(path);

  REQUIRE(back.size() == 2);
  CHECK(back[0].id == plain.id);
  CHECK(back[0].asr == plain.asr);
  CHECK(back[0].results.empty());
  REQUIRE(back[1].results.size() == 2);
  const auto& ceger = back[1].results.at(Method::Ceger);
  CHECK(ceger.payload == annotated.results[Method::Ceger].payload);
  CHECK(ceger.token_count == 6);
  CHECK(ceger.output == "a c");
  const auto& span = back[1].results.at(Method::Span);
  REQUIRE(span.error);
  CHECK(span.error->code == "SpanOutOfRange");
  CHECK_FALSE(span.output);
  CHECK(to_jsonl_line(back[1]) == to_jsonl_line(annotated));
}

TEST_CASE("synthesize_corpus with zero rates copies references", "[corpus][synth]") {
  const auto sources = generate_source_texts(50, 5, 12, 3);
  const auto records = synthesize_corpus(sources, ErrorRates{0, 0, 0}, 3);
  REQUIRE(records.size() == 50);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].asr == records[i].ref);
    CHECK(records[i].ref == sources[i]);
  }
  CHECK(records[0].id == "utt-000001");
}

TEST_CASE("substitution rate 1 gives WER 1 everywhere", "[corpus][synth]") {
  const auto sources = generate_source_texts(100, 3, 15, 8);
  for (const auto& r : synthesize_corpus(sources, ErrorRates{1.0, 0, 0}, 8)) {
    const auto w = wer(tokenize(r.asr), tokenize(r.ref));
    REQUIRE(w);
    CHECK(w->rate() == 1.0);
  }
}

TEST_CASE("induced error rate matches configuration", "[corpus][synth]") {
  const auto sources = generate_source_texts(400, 10, 20, 42);
  const auto records = synthesize_corpus(sources, ErrorRates{0.05, 0.025, 0.025}, 42);
  WerBreakdown total;
  for (const auto& r : records) total += score_counts(tokenize(r.asr), tokenize(r.ref));
  REQUIRE(total.ref_len >= 1000);
  CHECK(std::abs(total.rate() - 0.10) <= 0.02);
}

TEST_CASE("synthesis is deterministic per seed and validates rates", "[corpus][synth]") {
  const auto sources = generate_source_texts(20, 5, 10, 1);
  CHECK(generate_source_texts(20, 5, 10, 1) == sources);
  const auto a = synthesize_corpus(sources, ErrorRates{}, 9);
  const auto b = synthesize_corpus(sources, ErrorRates{}, 9);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].asr == b[i].asr);

  CHECK_THROWS_AS(synthesize_corpus(sources, ErrorRates{-0.1, 0, 0}, 1), BadRates);
  CHECK_THROWS_AS(synthesize_corpus(sources, ErrorRates{0.5, 0.4, 0.2}, 1), BadRates);
  CHECK_THROWS_AS(generate_source_texts(1, 5, 4, 1), std::invalid_argument);
}

TEST_CASE("noise perturbation", "[synth][noise]") {
  const TokenSeq hyp = tokenize("a b c d e f g h");
  const std::vector<Command> commands{Command::move_forward(3), Command::replace(1, {"x"}), Command::move_forward(2),
                                      Command::insert({"y"}), Command::remove(1), Command::move_forward(1)};

  SECTION("rate 0 is the identity") {
    CHECK(perturb_commands(commands, NoiseConfig{5, 0.0}, "u1", hyp) == commands);
  }
  SECTION("rate 1 changes every command") {
    const auto out = perturb_commands(commands, NoiseConfig{5, 1.0}, "u1", hyp);
    CHECK(out != commands);
    CHECK(out.size() <= commands.size());
  }
  SECTION("same seed and id reproduce the same perturbation") {
    CHECK(perturb_commands(commands, NoiseConfig{5, 0.5}, "u1", hyp) ==
          perturb_commands(commands, NoiseConfig{5, 0.5}, "u1", hyp));
  }
  SECTION("single perturbation kinds") {
    const auto dropped = perturb_commands(commands, NoiseConfig{5, 1.0, true, false, false}, "u1", hyp);
    CHECK(dropped.empty());

    const auto shifted = perturb_commands(commands, NoiseConfig{5, 1.0, false, true, false}, "u1", hyp);
    REQUIRE(shifted.size() == commands.size());
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (commands[i].kind() == CommandKind::Insert) {
        CHECK(shifted[i].words() != commands[i].words());
      } else {
        const auto diff = static_cast<long>(shifted[i].count()) - static_cast<long>(commands[i].count());
        CHECK((diff == 1 || diff == -1));
      }
    }
  }
  SECTION("invalid rate is rejected") {
    CHECK_THROWS_AS(perturb_commands(commands, NoiseConfig{5, 1.5}, "u1", hyp), std::invalid_argument);
  }
}
