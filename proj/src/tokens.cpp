#include "ceger/tokens.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ceger {

namespace {

bool is_space(char c) noexcept { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void require_valid_words(const std::vector<std::string>& words, const char* what) {
  for (const auto& w : words) {
    if (!is_valid_word(w)) {
      throw std::invalid_argument(std::string(what) + ": invalid word '" + w + "'");
    }
  }
}

}  // namespace

bool is_valid_word(std::string_view word) noexcept {
  return !word.empty() && std::none_of(word.begin(), word.end(), is_space);
}

TokenSeq::TokenSeq(std::vector<std::string> words) : words_(std::move(words)) {
  require_valid_words(words_, "TokenSeq");
}

TokenSeq::TokenSeq(std::initializer_list<std::string> words) : TokenSeq(std::vector<std::string>(words)) {}

const std::string& TokenSeq::at(std::size_t position) const {
  if (position < 1 || position > words_.size()) {
    throw std::out_of_range("TokenSeq::at: position " + std::to_string(position) + " outside [1, " +
                            std::to_string(words_.size()) + "]");
  }
  return words_[position - 1];
}

std::span<const std::string> TokenSeq::slice(std::size_t first, std::size_t count) const {
  if (first < 1 || first - 1 > words_.size() || count > words_.size() - (first - 1)) {
    throw std::out_of_range("TokenSeq::slice out of range");
  }
  return std::span<const std::string>(words_).subspan(first - 1, count);
}

TokenSeq tokenize(std::string_view text, bool normalize_case) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) {
      std::string w(text.substr(start, i - start));
      if (normalize_case) {
        std::transform(w.begin(), w.end(), w.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      }
      words.push_back(std::move(w));
    }
  }
  return TokenSeq(std::move(words));
}

std::string join_words(std::span<const std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

std::string detokenize(const TokenSeq& seq) { return join_words(seq.words()); }

std::string_view to_string(EditKind kind) noexcept {
  switch (kind) {
    case EditKind::Match: return "Match";
    case EditKind::Substitute: return "Substitute";
    case EditKind::Insert: return "Insert";
    case EditKind::Delete: return "Delete";
  }
  return "?";
}

EditOp::EditOp(EditKind kind, std::vector<std::string> hyp, std::vector<std::string> ref)
    : kind_(kind), hyp_(std::move(hyp)), ref_(std::move(ref)) {
  require_valid_words(hyp_, "EditOp");
  require_valid_words(ref_, "EditOp");
}

EditOp EditOp::match(std::vector<std::string> words) {
  if (words.empty()) throw std::invalid_argument("EditOp::match: empty word list");
  auto copy = words;
  return EditOp(EditKind::Match, std::move(words), std::move(copy));
}

EditOp EditOp::substitute(std::vector<std::string> hyp_words, std::vector<std::string> ref_words) {
  if (hyp_words.empty() || ref_words.empty()) {
    throw std::invalid_argument("EditOp::substitute: both sides must be non-empty");
  }
  return EditOp(EditKind::Substitute, std::move(hyp_words), std::move(ref_words));
}

EditOp EditOp::insert(std::vector<std::string> ref_words) {
  if (ref_words.empty()) throw std::invalid_argument("EditOp::insert: empty word list");
  return EditOp(EditKind::Insert, {}, std::move(ref_words));
}

EditOp EditOp::remove(std::vector<std::string> hyp_words) {
  if (hyp_words.empty()) throw std::invalid_argument("EditOp::remove: empty word list");
  return EditOp(EditKind::Delete, std::move(hyp_words), {});
}

std::string_view keyword(CommandKind kind) noexcept {
  switch (kind) {
    case CommandKind::MoveForward: return "MOVE_FORWARD";
    case CommandKind::Delete: return "DELETE";
    case CommandKind::Insert: return "INSERT";
    case CommandKind::Replace: return "REPLACE";
  }
  return "?";
}

Command::Command(CommandKind kind, std::size_t count, std::vector<std::string> words)
    : kind_(kind), count_(count), words_(std::move(words)) {
  if (kind_ != CommandKind::Insert && count_ == 0) {
    throw std::invalid_argument("Command: count must be >= 1");
  }
  if ((kind_ == CommandKind::Insert || kind_ == CommandKind::Replace) && words_.empty()) {
    throw std::invalid_argument("Command: payload must contain at least one word");
  }
  require_valid_words(words_, "Command");
}

Command Command::move_forward(std::size_t count) { return Command(CommandKind::MoveForward, count, {}); }
Command Command::remove(std::size_t count) { return Command(CommandKind::Delete, count, {}); }
Command Command::insert(std::vector<std::string> words) { return Command(CommandKind::Insert, 0, std::move(words)); }
Command Command::replace(std::size_t count, std::vector<std::string> words) {
  return Command(CommandKind::Replace, count, std::move(words));
}

}  // namespace ceger
