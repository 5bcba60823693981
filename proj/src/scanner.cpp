#include "ceger/detail/scanner.hpp"

#include <cctype>
#include <limits>

namespace ceger::detail {

namespace {

bool is_space(char c) noexcept { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
bool is_alnum(char c) noexcept { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string quote_words(std::span<const std::string> words) {
  std::string out = "'";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    for (char c : words[i]) {
      if (c == '\'' || c == '\\') out += '\\';
      out += c;
    }
  }
  out += '\'';
  return out;
}

std::size_t Scanner::skip_ws() noexcept {
  const std::size_t start = pos_;
  while (!at_end() && is_space(text_[pos_])) ++pos_;
  return pos_ - start;
}

bool Scanner::consume(std::string_view literal) noexcept {
  if (text_.substr(pos_).starts_with(literal)) {
    pos_ += literal.size();
    return true;
  }
  return false;
}

std::string_view Scanner::keyword() noexcept {
  const std::size_t start = pos_;
  while (!at_end()) {
    const char c = text_[pos_];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) break;
    ++pos_;
  }
  return text_.substr(start, pos_ - start);
}

ParseError Scanner::error_at(std::size_t pos, ParseErrorKind kind, std::string detail) const {
  return ParseError{std::min(pos, text_.size()), kind, std::move(detail)};
}

Expected<std::size_t, ParseError> Scanner::count(bool allow_zero) {
  const std::size_t start = pos_;
  if (at_end() || !is_digit(peek())) return unexpected(error(ParseErrorKind::BadCount, "expected a decimal count"));
  if (peek() == '0') {
    ++pos_;
    if (!allow_zero) return unexpected(error_at(start, ParseErrorKind::BadCount, "count must be >= 1"));
    if (!at_end() && is_alnum(peek())) {
      return unexpected(error_at(start, ParseErrorKind::BadCount, "leading zero in count"));
    }
    return std::size_t{0};
  }
  std::size_t value = 0;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  while (!at_end() && is_digit(peek())) {
    const std::size_t digit = static_cast<std::size_t>(peek() - '0');
    if (value > (kMax - digit) / 10) return unexpected(error_at(start, ParseErrorKind::BadCount, "count overflows"));
    value = value * 10 + digit;
    ++pos_;
  }
  if (!at_end() && is_alnum(peek())) return unexpected(error(ParseErrorKind::BadCount, "malformed count"));
  return value;
}

Expected<std::vector<std::string>, ParseError> Scanner::quoted(bool allow_empty) {
  const std::size_t open = pos_;
  if (!consume("'")) return unexpected(error(ParseErrorKind::EmptyPayload, "expected quoted payload"));

  std::vector<std::string> words;
  std::string current;
  while (true) {
    if (at_end()) return unexpected(error_at(open, ParseErrorKind::UnterminatedQuote, "unterminated quote"));
    const char c = text_[pos_];
    if (c == '\\') {
      if (pos_ + 1 >= text_.size()) {
        return unexpected(error_at(open, ParseErrorKind::UnterminatedQuote, "unterminated quote"));
      }
      const char next = text_[pos_ + 1];
      if (next != '\'' && next != '\\') {
        return unexpected(error(ParseErrorKind::BadEscape, "only \\' and \\\\ are valid escapes"));
      }
      current += next;
      pos_ += 2;
    } else if (c == '\'') {
      if (current.empty()) {
        if (!words.empty()) return unexpected(error(ParseErrorKind::EmptyPayload, "empty word before closing quote"));
        if (!allow_empty) return unexpected(error_at(open, ParseErrorKind::EmptyPayload, "payload has no words"));
      } else {
        words.push_back(std::move(current));
      }
      ++pos_;
      return words;
    } else if (c == ' ') {
      if (current.empty()) return unexpected(error(ParseErrorKind::EmptyPayload, "empty word in payload"));
      words.push_back(std::move(current));
      current.clear();
      ++pos_;
    } else if (is_space(c)) {
      return unexpected(error(ParseErrorKind::EmptyPayload, "payload words are separated by single spaces only"));
    } else {
      current += c;
      ++pos_;
    }
  }
}

Expected<std::size_t, ParseError> Scanner::close_entry() {
  if (!consume("]")) return unexpected(error(ParseErrorKind::TrailingGarbage, "expected ']'"));
  return pos_;
}

}  // namespace ceger::detail
