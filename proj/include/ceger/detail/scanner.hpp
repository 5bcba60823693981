#pragma once

// Lexing helpers shared by the command grammar and the baseline payload
// grammars. All of them use the same bracketed-entry layout and quoting.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceger/expected.hpp"
#include "ceger/grammar.hpp"

namespace ceger::detail {

/// "'w1 w2'" with ' and \ escaped. An empty list yields "''".
std::string quote_words(std::span<const std::string> words);

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t pos() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= text_.size(); }
  char peek() const noexcept { return at_end() ? '\0' : text_[pos_]; }
  std::string_view text() const noexcept { return text_; }

  /// Skips any whitespace; returns how many bytes were skipped.
  std::size_t skip_ws() noexcept;
  /// Consumes `literal` if the input continues with it.
  bool consume(std::string_view literal) noexcept;
  /// Reads [A-Za-z_]* (an entry keyword); may be empty.
  std::string_view keyword() noexcept;

  /// Decimal count. Without allow_zero: [1-9][0-9]*; with it "0" is also valid.
  Expected<std::size_t, ParseError> count(bool allow_zero);
  /// Quoted word list. With allow_empty, "''" yields an empty list.
  Expected<std::vector<std::string>, ParseError> quoted(bool allow_empty);
  /// Consumes the closing ']' of an entry.
  Expected<std::size_t, ParseError> close_entry();

  ParseError error(ParseErrorKind kind, std::string detail) const { return error_at(pos_, kind, std::move(detail)); }
  ParseError error_at(std::size_t pos, ParseErrorKind kind, std::string detail) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Parses "WS? (entry (WS entry)*)? WS?", delegating each '['-introduced
/// entry to `parse_entry(Scanner&) -> Expected<Item, ParseError>`.
template <class Item, class ParseEntry>
Expected<std::vector<Item>, ParseError> parse_entries(std::string_view text, ParseEntry&& parse_entry) {
  Scanner s(text);
  std::vector<Item> items;
  s.skip_ws();
  bool separated = true;
  while (!s.at_end()) {
    if (!separated || s.peek() != '[') {
      if (items.empty()) return unexpected(s.error(ParseErrorKind::UnknownCommand, "expected '['"));
      return unexpected(s.error(ParseErrorKind::TrailingGarbage, "unexpected text after ']'"));
    }
    auto item = parse_entry(s);
    if (!item) return unexpected(item.error());
    items.push_back(std::move(item).value());
    separated = s.skip_ws() > 0;
  }
  return items;
}

}  // namespace ceger::detail
