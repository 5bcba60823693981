#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ceger/engine.hpp"
#include "ceger/grammar.hpp"
#include "support/oracle.hpp"

using namespace ceger;
using testing::Words;

namespace {

const TokenSeq kStoreHyp = tokenize("I went to the store and bought apples.");
const TokenSeq kMarketRef = tokenize("I went to the market and bought red apples.");

std::vector<Command> compile_pair(const TokenSeq& hyp, const TokenSeq& ref) { return compile(align(hyp, ref)); }

bool canonical(const std::vector<Command>& commands) {
  for (std::size_t i = 1; i < commands.size(); ++i) {
    if (commands[i].kind() == commands[i - 1].kind()) return false;
    const auto a = commands[i - 1].kind();
    const auto b = commands[i].kind();
    if ((a == CommandKind::Delete && b == CommandKind::Insert) || (a == CommandKind::Insert && b == CommandKind::Delete)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("compile reproduces the worked example", "[engine]") {
  const auto commands = compile_pair(kStoreHyp, kMarketRef);
  CHECK(commands == std::vector{Command::move_forward(4), Command::replace(1, {"market"}), Command::move_forward(2),
                                Command::insert({"red"}), Command::move_forward(1)});
  const auto out = expand(kStoreHyp, commands, ExpandMode::Strict);
  REQUIRE(out);
  CHECK(*out == kMarketRef);
  CHECK(out->size() == 9);
}

TEST_CASE("compile edge cases", "[engine]") {
  const auto ten = tokenize("He was quiet for a moment, then began to speak.");
  CHECK(compile_pair(ten, ten) == std::vector{Command::move_forward(10)});
  CHECK(compile_pair(TokenSeq{}, TokenSeq{"a", "b"}) == std::vector{Command::insert({"a", "b"})});
  CHECK(compile_pair(TokenSeq{"a", "b"}, TokenSeq{}) == std::vector{Command::remove(2)});
  CHECK(compile_pair(TokenSeq{}, TokenSeq{}).empty());
  CHECK(compile_pair(tokenize("Their going to the store."), tokenize("They're going to the store.")) ==
        std::vector{Command::replace(1, {"They're"}), Command::move_forward(4)});
}

TEST_CASE("compile folds delete/insert runs into replace", "[engine]") {
  // Hand-built alignments exercise the folding independent of tie-breaks.
  Alignment del_then_ins;
  del_then_ins.ops = {EditOp::match({"a"}), EditOp::remove({"b"}), EditOp::remove({"c"}), EditOp::insert({"x"})};
  del_then_ins.hyp_len = 3;
  del_then_ins.ref_len = 2;
  CHECK(compile(del_then_ins) ==
        std::vector{Command::move_forward(1), Command::replace(1, {"x"}), Command::remove(1)});

  Alignment ins_then_del;
  ins_then_del.ops = {EditOp::insert({"x"}), EditOp::insert({"y"}), EditOp::remove({"b"})};
  ins_then_del.hyp_len = 1;
  ins_then_del.ref_len = 2;
  CHECK(compile(ins_then_del) == std::vector{Command::replace(1, {"x"}), Command::insert({"y"})});

  Alignment sub_del_ins;
  sub_del_ins.ops = {EditOp::substitute({"a"}, {"p"}), EditOp::remove({"b"}), EditOp::insert({"q"})};
  sub_del_ins.hyp_len = 2;
  sub_del_ins.ref_len = 2;
  CHECK(compile(sub_del_ins) == std::vector{Command::replace(2, {"p", "q"})});
}

TEST_CASE("expand follows the pointer rules", "[engine]") {
  const TokenSeq abc{"a", "b", "c"};
  CHECK(*expand(abc, std::vector{Command::move_forward(3)}, ExpandMode::Strict) == abc);

  const auto lenient = expand(abc, std::vector{Command::move_forward(1)}, ExpandMode::Lenient);
  REQUIRE(lenient);
  CHECK(*lenient == abc);

  const auto strict = expand(abc, std::vector{Command::move_forward(1)}, ExpandMode::Strict);
  REQUIRE_FALSE(strict);
  CHECK(strict.error().kind == ExpansionErrorKind::UnconsumedInput);
  CHECK(strict.error().command_index == 1);
  CHECK(strict.error().pointer == 2);

  for (auto mode : {ExpandMode::Strict, ExpandMode::Lenient}) {
    const auto overflow = expand(TokenSeq{"a", "b"}, std::vector{Command::move_forward(3)}, mode);
    REQUIRE_FALSE(overflow);
    CHECK(overflow.error().kind == ExpansionErrorKind::PointerOverflow);
    CHECK(overflow.error().command_index == 0);
    CHECK(overflow.error().pointer == 1);
    CHECK(overflow.error().hyp_len == 2);
  }

  const auto replaced = expand(abc, std::vector{Command::remove(1), Command::insert({"x"}),
                                                Command::replace(1, {"y", "z"}), Command::move_forward(1)},
                               ExpandMode::Strict);
  REQUIRE(replaced);
  CHECK(*replaced == TokenSeq{"x", "y", "z", "c"});

  // Adjacent same-kind commands are legal input even though compile never emits them.
  CHECK(*expand(abc, std::vector{Command::move_forward(1), Command::move_forward(2)}, ExpandMode::Strict) == abc);

  const auto huge = expand(abc, std::vector{Command::move_forward(1), Command::remove(SIZE_MAX)}, ExpandMode::Lenient);
  REQUIRE_FALSE(huge);
  CHECK(huge.error().pointer == 2);
}

TEST_CASE("command_stats counts kinds", "[engine]") {
  const auto stats = command_stats(compile_pair(kStoreHyp, kMarketRef));
  CHECK(stats[CommandKind::MoveForward] == 3);
  CHECK(stats[CommandKind::Replace] == 1);
  CHECK(stats[CommandKind::Insert] == 1);
  CHECK(stats[CommandKind::Delete] == 0);
  CHECK(stats.total() == 5);
  CHECK(command_stats(std::vector<Command>{}).total() == 0);
}

TEST_CASE("compile/expand round trip on random pairs", "[engine][property]") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10000; ++trial) {
    const Words h = testing::random_words(rng, 25);
    const Words r = trial % 3 == 0 ? testing::random_words(rng, 25) : testing::mutate(rng, h, 0.25);
    const TokenSeq hyp(h), ref(r);
    const auto commands = compile(align(hyp, ref));

    REQUIRE(canonical(commands));
    const auto out = expand(hyp, commands, ExpandMode::Strict);
    REQUIRE(out);
    REQUIRE(*out == ref);

    std::size_t consumed = 0;
    for (const auto& c : commands) consumed += c.count();
    REQUIRE(consumed == hyp.size());

    const auto reparsed = parse(serialize(commands));
    REQUIRE(reparsed);
    REQUIRE(*reparsed == commands);
    if (h == r && !h.empty()) REQUIRE(commands.size() == 1);
  }
}

TEST_CASE("adversarial round trips", "[engine]") {
  const std::vector<std::pair<Words, Words>> cases = {
      {{}, {}},
      {{"a"}, {}},
      {{}, {"a"}},
      {{"a", "b", "c"}, {"x", "y", "z"}},
      {{"a", "a", "a", "a"}, {"a", "a"}},
      {{"a", "a"}, {"a", "a", "a", "a"}},
      {{"a", "b", "a", "b"}, {"b", "a", "b", "a"}},
      {{"x"}, {"y", "y", "y", "y", "y"}},
      {{"y", "y", "y", "y", "y"}, {"x"}},
  };
  for (const auto& [h, r] : cases) {
    const TokenSeq hyp(h), ref(r);
    const auto out = expand(hyp, compile(align(hyp, ref)), ExpandMode::Strict);
    REQUIRE(out);
    CHECK(*out == ref);
  }
}

TEST_CASE("expansion is deterministic", "[engine]") {
  const auto commands = compile_pair(kStoreHyp, kMarketRef);
  const auto a = expand(kStoreHyp, commands, ExpandMode::Strict);
  const auto b = expand(kStoreHyp, commands, ExpandMode::Strict);
  CHECK(*a == *b);
}
