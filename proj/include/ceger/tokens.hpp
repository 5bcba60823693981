#pragma once

// Core token and edit types shared by every module.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ceger {

/// True if `word` is usable as a token: non-empty, no whitespace bytes.
bool is_valid_word(std::string_view word) noexcept;

/// Ordered word sequence. Positions are 1-based in `at()`, matching the
/// pointer semantics of the expansion engine; `operator[]` is 0-based.
class TokenSeq {
 public:
  TokenSeq() = default;
  /// Throws std::invalid_argument if any word is empty or contains whitespace.
  explicit TokenSeq(std::vector<std::string> words);
  TokenSeq(std::initializer_list<std::string> words);

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

  const std::string& operator[](std::size_t index) const { return words_[index]; }
  /// 1-based access; throws std::out_of_range.
  const std::string& at(std::size_t position) const;

  std::span<const std::string> words() const noexcept { return words_; }
  /// Words at 1-based positions [first, first + count).
  std::span<const std::string> slice(std::size_t first, std::size_t count) const;

  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;

 private:
  std::vector<std::string> words_;
};

/// Splits on runs of whitespace; optionally lowercases ASCII letters.
TokenSeq tokenize(std::string_view text, bool normalize_case = false);

/// Joins with single spaces.
std::string detokenize(const TokenSeq& seq);
std::string join_words(std::span<const std::string> words);

enum class EditKind { Match, Substitute, Insert, Delete };

std::string_view to_string(EditKind kind) noexcept;

/// One alignment step. Insert adds a reference word, Delete drops a
/// hypothesis word (hypothesis-centric naming).
class EditOp {
 public:
  static EditOp match(std::vector<std::string> words);
  static EditOp substitute(std::vector<std::string> hyp_words, std::vector<std::string> ref_words);
  static EditOp insert(std::vector<std::string> ref_words);
  static EditOp remove(std::vector<std::string> hyp_words);

  EditKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& hyp_words() const noexcept { return hyp_; }
  const std::vector<std::string>& ref_words() const noexcept { return ref_; }

  friend bool operator==(const EditOp&, const EditOp&) = default;

 private:
  EditOp(EditKind kind, std::vector<std::string> hyp, std::vector<std::string> ref);

  EditKind kind_;
  std::vector<std::string> hyp_;
  std::vector<std::string> ref_;
};

enum class CommandKind { MoveForward, Delete, Insert, Replace };

inline constexpr CommandKind kAllCommandKinds[] = {CommandKind::MoveForward, CommandKind::Delete,
                                                   CommandKind::Insert, CommandKind::Replace};

/// Keyword as it appears in the serialized grammar, e.g. "MOVE_FORWARD".
std::string_view keyword(CommandKind kind) noexcept;

/// A single edit instruction. Counts are >= 1 and payloads are non-empty
/// lists of valid words; the factories throw std::invalid_argument otherwise.
class Command {
 public:
  static Command move_forward(std::size_t count);
  static Command remove(std::size_t count);
  static Command insert(std::vector<std::string> words);
  static Command replace(std::size_t count, std::vector<std::string> words);

  CommandKind kind() const noexcept { return kind_; }
  /// Words consumed from the hypothesis (0 for Insert).
  std::size_t count() const noexcept { return count_; }
  /// Payload words (empty for MoveForward and Delete).
  const std::vector<std::string>& words() const noexcept { return words_; }

  friend bool operator==(const Command&, const Command&) = default;

 private:
  Command(CommandKind kind, std::size_t count, std::vector<std::string> words);

  CommandKind kind_;
  std::size_t count_;
  std::vector<std::string> words_;
};

}  // namespace ceger
