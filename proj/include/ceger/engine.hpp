#pragma once

// Compiles alignments into command sequences and replays command sequences
// over a hypothesis to produce corrected text.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ceger/aligner.hpp"
#include "ceger/expected.hpp"
#include "ceger/tokens.hpp"

namespace ceger {

/// Canonical command sequence for an alignment.
///
/// Match runs become MoveForward, Substitute runs Replace, Insert runs
/// Insert and Delete runs Delete. An adjacent Delete/Insert pair (either
/// order) is folded into Replace(min) plus a residual Delete or Insert,
/// and adjacent same-kind commands are then merged until no two adjacent
/// commands share a kind.
std::vector<Command> compile(const Alignment& alignment);

enum class ExpandMode {
  Strict,   // every hypothesis word must be consumed by the commands
  Lenient,  // words left after the last command are carried over
};

enum class ExpansionErrorKind { PointerOverflow, UnconsumedInput };

std::string_view to_string(ExpansionErrorKind kind) noexcept;

struct ExpansionError {
  ExpansionErrorKind kind = ExpansionErrorKind::PointerOverflow;
  std::size_t command_index = 0;  // == commands.size() for UnconsumedInput
  std::size_t pointer = 1;        // 1-based pointer at failure
  std::size_t hyp_len = 0;
};

std::string describe(const ExpansionError& error);

/// Replays `commands` over `hyp` with a 1-based pointer starting at 1.
Expected<TokenSeq, ExpansionError> expand(const TokenSeq& hyp, std::span<const Command> commands, ExpandMode mode);

struct CommandStats {
  std::array<std::size_t, 4> counts{};  // indexed by CommandKind

  std::size_t operator[](CommandKind kind) const noexcept { return counts[static_cast<std::size_t>(kind)]; }
  std::size_t total() const noexcept;
  CommandStats& operator+=(const CommandStats& other) noexcept;
  friend bool operator==(const CommandStats&, const CommandStats&) = default;
};

CommandStats command_stats(std::span<const Command> commands) noexcept;

}  // namespace ceger
