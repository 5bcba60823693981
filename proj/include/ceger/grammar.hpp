#pragma once

// Textual command format: the wire format between a command generator and
// the expansion engine, and the on-disk form in corpus result files.
//
//   seq      := WS? (command (WS command)*)? WS?
//   command  := "[MOVE_FORWARD " INT "]"
//             | "[DELETE " INT "]"
//             | "[INSERT " QUOTED "]"
//             | "[REPLACE " INT " WITH " QUOTED "]"
//   QUOTED   := "'" word (" " word)* "'"     escapes: \' and \\ only
//   INT      := [1-9][0-9]*

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceger/expected.hpp"
#include "ceger/tokens.hpp"

namespace ceger {

enum class ParseErrorKind { UnknownCommand, BadCount, UnterminatedQuote, EmptyPayload, TrailingGarbage, BadEscape };

std::string_view to_string(ParseErrorKind kind) noexcept;

struct ParseError {
  std::size_t position = 0;  // byte offset into the input, <= input length
  ParseErrorKind kind = ParseErrorKind::UnknownCommand;
  std::string detail;
};

/// "BadCount at 8: count must be >= 1"
std::string describe(const ParseError& error);

std::string serialize(const Command& command);
std::string serialize(std::span<const Command> commands);

/// Strict parse. Keywords are uppercase only; returns the first offending
/// position on failure and never throws on malformed input.
Expected<std::vector<Command>, ParseError> parse(std::string_view text);

}  // namespace ceger
