#include "ceger/grammar.hpp"

#include <optional>

#include "ceger/detail/scanner.hpp"

namespace ceger {

using detail::Scanner;

std::string_view to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::UnknownCommand: return "UnknownCommand";
    case ParseErrorKind::BadCount: return "BadCount";
    case ParseErrorKind::UnterminatedQuote: return "UnterminatedQuote";
    case ParseErrorKind::EmptyPayload: return "EmptyPayload";
    case ParseErrorKind::TrailingGarbage: return "TrailingGarbage";
    case ParseErrorKind::BadEscape: return "BadEscape";
  }
  return "?";
}

std::string describe(const ParseError& error) {
  return std::string(to_string(error.kind)) + " at " + std::to_string(error.position) + ": " + error.detail;
}

std::string serialize(const Command& command) {
  std::string out = "[";
  out += keyword(command.kind());
  switch (command.kind()) {
    case CommandKind::MoveForward:
    case CommandKind::Delete:
      out += ' ' + std::to_string(command.count());
      break;
    case CommandKind::Insert:
      out += ' ' + detail::quote_words(command.words());
      break;
    case CommandKind::Replace:
      out += ' ' + std::to_string(command.count()) + " WITH " + detail::quote_words(command.words());
      break;
  }
  out += ']';
  return out;
}

std::string serialize(std::span<const Command> commands) {
  std::string out;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (i) out += ' ';
    out += serialize(commands[i]);
  }
  return out;
}

namespace {

std::optional<CommandKind> lookup_keyword(std::string_view word) {
  for (CommandKind kind : kAllCommandKinds) {
    if (keyword(kind) == word) return kind;
  }
  return std::nullopt;
}

Expected<Command, ParseError> parse_command(Scanner& s) {
  const std::size_t start = s.pos();
  s.consume("[");
  const auto kind = lookup_keyword(s.keyword());
  if (!kind) return unexpected(s.error_at(start + 1, ParseErrorKind::UnknownCommand, "unknown command keyword"));

  if (!s.consume(" ")) {
    const auto missing = *kind == CommandKind::Insert ? ParseErrorKind::EmptyPayload : ParseErrorKind::BadCount;
    return unexpected(s.error(missing, "expected a single space after keyword"));
  }

  std::optional<Command> command;
  switch (*kind) {
    case CommandKind::MoveForward:
    case CommandKind::Delete: {
      auto n = s.count(false);
      if (!n) return unexpected(n.error());
      command = *kind == CommandKind::MoveForward ? Command::move_forward(*n) : Command::remove(*n);
      break;
    }
    case CommandKind::Insert: {
      auto words = s.quoted(false);
      if (!words) return unexpected(words.error());
      command = Command::insert(std::move(words).value());
      break;
    }
    case CommandKind::Replace: {
      auto n = s.count(false);
      if (!n) return unexpected(n.error());
      if (!s.consume(" WITH ")) return unexpected(s.error(ParseErrorKind::UnknownCommand, "expected ' WITH '"));
      auto words = s.quoted(false);
      if (!words) return unexpected(words.error());
      command = Command::replace(*n, std::move(words).value());
      break;
    }
  }
  if (auto closed = s.close_entry(); !closed) return unexpected(closed.error());
  return std::move(*command);
}

}  // namespace

Expected<std::vector<Command>, ParseError> parse(std::string_view text) {
  return detail::parse_entries<Command>(text, parse_command);
}

}  // namespace ceger
