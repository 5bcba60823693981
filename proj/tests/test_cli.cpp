#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ceger/cli.hpp"
#include "json.hpp"

using namespace ceger;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

const std::string kHyp = "I went to the store and bought apples.";
const std::string kRef = "I went to the market and bought red apples.";
const std::string kPayload = "[MOVE_FORWARD 4] [REPLACE 1 WITH 'market'] [MOVE_FORWARD 2] [INSERT 'red'] [MOVE_FORWARD 1]";

}  // namespace

TEST_CASE("compile and expand the worked example", "[cli]") {
  const auto compiled = run({"compile", "--hyp", kHyp, "--ref", kRef});
  CHECK(compiled.code == kExitOk);
  CHECK(compiled.out == kPayload + "\n");

  const auto expanded = run({"expand", "--hyp", kHyp, "--payload", kPayload, "--mode", "strict"});
  CHECK(expanded.code == kExitOk);
  CHECK(expanded.out == kRef + "\n");

  const auto all = run({"compile", "--hyp", kHyp, "--ref", kRef, "--method", "all"});
  CHECK(all.out.find("span\t[SPAN 5 6 'market'] [SPAN 8 8 'red']\n") != std::string::npos);
}

TEST_CASE("align prints ops and a summary", "[cli]") {
  const auto r = run({"align", "--hyp", "a b c", "--ref", "a x c d"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("distance=2 S=1 D=0 I=1 ref_len=4 wer=0.5") != std::string::npos);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"compile", "--method", "nope", "--hyp", "a", "--ref", "b"}).code == kExitUsage);
  CHECK(run({"expand", "--hyp", "a"}).code == kExitUsage);
  CHECK(run({"score", "--noise-rate", "1.5", "--input", "x.jsonl"}).code == kExitUsage);
  CHECK(run({"synthesize", "--sub-rate", "0.9", "--ins-rate", "0.9"}).code == kExitUsage);

  const auto overflow = run({"expand", "--hyp", "a b", "--payload", "[MOVE_FORWARD 3]"});
  CHECK(overflow.code == kExitData);
  CHECK(overflow.err.find("PointerOverflow") != std::string::npos);
  const auto bad = run({"expand", "--hyp", "a b", "--payload", "[JUMP 1]"});
  CHECK(bad.code == kExitData);
  CHECK(run({"score", "--input", "/nonexistent/corpus.jsonl"}).code == kExitData);

  const auto broken = temp_file("ceger_cli_broken.jsonl", "{\"id\": \"a\"}\n");
  CHECK(run({"score", "--input", broken.string()}).code == kExitData);
  std::filesystem::remove(broken);
}

TEST_CASE("synthesize, score and report agree", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto corpus = dir / "ceger_cli_corpus.jsonl";
  const auto annotated = dir / "ceger_cli_annotated.jsonl";
  REQUIRE(run({"synthesize", "--count", "40", "--seed", "3", "--output", corpus.string()}).code == kExitOk);

  const auto scored = run({"score", "--input", corpus.string(), "--format", "json", "--annotated",
                           annotated.string(), "--corpus-name", "tiny"});
  REQUIRE(scored.code == kExitOk);
  const auto doc = nlohmann::json::parse(scored.out);
  CHECK(doc["corpus"] == "tiny");
  CHECK(doc["methods"].size() == 5);

  const auto reported =
      run({"report", "--input", annotated.string(), "--format", "json", "--corpus-name", "tiny"});
  REQUIRE(reported.code == kExitOk);
  CHECK(reported.out == scored.out);

  const auto table = run({"report", "--input", annotated.string()});
  CHECK(table.out.rfind("# corpus: ceger_cli_annotated", 0) == 0);

  std::filesystem::remove(corpus);
  std::filesystem::remove(annotated);
}

TEST_CASE("expand reads JSONL batches", "[cli]") {
  const auto in = temp_file("ceger_cli_expand.jsonl",
                            "{\"id\": \"a\", \"asr\": \"a b\", \"payload\": \"[MOVE_FORWARD 1] [DELETE 1]\"}\n"
                            "{\"id\": \"b\", \"asr\": \"a b\", \"payload\": \"[DELETE 9]\"}\n");
  const auto r = run({"expand", "--input", in.string()});
  std::filesystem::remove(in);
  REQUIRE(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(nlohmann::json::parse(first)["output"] == "a");
  CHECK(nlohmann::json::parse(second)["error"]["code"] == "PointerOverflow");
}
