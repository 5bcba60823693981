#include "ceger/engine.hpp"

#include <algorithm>
#include <numeric>

namespace ceger {

namespace {

struct Draft {
  CommandKind kind;
  std::size_t count = 0;
  std::vector<std::string> words;

  Command finish() && {
    switch (kind) {
      case CommandKind::MoveForward: return Command::move_forward(count);
      case CommandKind::Delete: return Command::remove(count);
      case CommandKind::Insert: return Command::insert(std::move(words));
      case CommandKind::Replace: return Command::replace(count, std::move(words));
    }
    return Command::move_forward(count);
  }
};

bool is_delete_insert_pair(CommandKind a, CommandKind b) {
  return (a == CommandKind::Delete && b == CommandKind::Insert) ||
         (a == CommandKind::Insert && b == CommandKind::Delete);
}

// Stack-based peephole canonicalizer. The stack never holds two adjacent
// commands of the same kind, nor an adjacent Delete/Insert pair.
class Canonicalizer {
 public:
  void push(Draft next) {
    if (stack_.empty()) {
      stack_.push_back(std::move(next));
      return;
    }
    Draft& top = stack_.back();
    if (top.kind == next.kind) {
      top.count += next.count;
      top.words.insert(top.words.end(), std::make_move_iterator(next.words.begin()),
                       std::make_move_iterator(next.words.end()));
      return;
    }
    if (is_delete_insert_pair(top.kind, next.kind)) {
      const bool top_is_delete = top.kind == CommandKind::Delete;
      Draft del = top_is_delete ? std::move(top) : std::move(next);
      Draft ins = top_is_delete ? std::move(next) : std::move(top);
      stack_.pop_back();

      const std::size_t shared = std::min(del.count, ins.words.size());
      Draft replace{CommandKind::Replace, shared, {}};
      replace.words.assign(std::make_move_iterator(ins.words.begin()),
                           std::make_move_iterator(ins.words.begin() + static_cast<std::ptrdiff_t>(shared)));
      push(std::move(replace));
      if (del.count > shared) {
        push(Draft{CommandKind::Delete, del.count - shared, {}});
      } else if (ins.words.size() > shared) {
        Draft rest{CommandKind::Insert, 0, {}};
        rest.words.assign(std::make_move_iterator(ins.words.begin() + static_cast<std::ptrdiff_t>(shared)),
                          std::make_move_iterator(ins.words.end()));
        push(std::move(rest));
      }
      return;
    }
    stack_.push_back(std::move(next));
  }

  std::vector<Command> finish() && {
    std::vector<Command> out;
    out.reserve(stack_.size());
    for (auto& d : stack_) out.push_back(std::move(d).finish());
    return out;
  }

 private:
  std::vector<Draft> stack_;
};

Draft draft_for(const EditOp& op) {
  switch (op.kind()) {
    case EditKind::Match: return {CommandKind::MoveForward, op.hyp_words().size(), {}};
    case EditKind::Substitute: return {CommandKind::Replace, op.hyp_words().size(), op.ref_words()};
    case EditKind::Insert: return {CommandKind::Insert, 0, op.ref_words()};
    case EditKind::Delete: return {CommandKind::Delete, op.hyp_words().size(), {}};
  }
  return {CommandKind::MoveForward, 0, {}};
}

}  // namespace

std::vector<Command> compile(const Alignment& alignment) {
  Canonicalizer canon;
  for (const auto& op : alignment.ops) canon.push(draft_for(op));
  return std::move(canon).finish();
}

std::string_view to_string(ExpansionErrorKind kind) noexcept {
  switch (kind) {
    case ExpansionErrorKind::PointerOverflow: return "PointerOverflow";
    case ExpansionErrorKind::UnconsumedInput: return "UnconsumedInput";
  }
  return "?";
}

std::string describe(const ExpansionError& error) {
  std::string out(to_string(error.kind));
  out += " at command " + std::to_string(error.command_index) + " (p=" + std::to_string(error.pointer) +
         ", m=" + std::to_string(error.hyp_len) + ")";
  return out;
}

Expected<TokenSeq, ExpansionError> expand(const TokenSeq& hyp, std::span<const Command> commands, ExpandMode mode) {
  const std::size_t m = hyp.size();
  std::size_t p = 1;
  std::vector<std::string> out;
  out.reserve(m + 8);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const Command& c = commands[i];
    const std::size_t n = c.count();
    // Words remaining at positions p..m is m - p + 1; compare without overflow.
    if (c.kind() != CommandKind::Insert && n > m + 1 - p) {
      return unexpected(ExpansionError{ExpansionErrorKind::PointerOverflow, i, p, m});
    }
    switch (c.kind()) {
      case CommandKind::Delete:
        break;
      case CommandKind::Insert:
      case CommandKind::Replace:
        out.insert(out.end(), c.words().begin(), c.words().end());
        break;
      case CommandKind::MoveForward: {
        auto carried = hyp.slice(p, n);
        out.insert(out.end(), carried.begin(), carried.end());
        break;
      }
    }
    p += n;
  }

  if (p != m + 1) {
    if (mode == ExpandMode::Strict) {
      return unexpected(ExpansionError{ExpansionErrorKind::UnconsumedInput, commands.size(), p, m});
    }
    auto rest = hyp.slice(p, m + 1 - p);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return TokenSeq(std::move(out));
}

std::size_t CommandStats::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

CommandStats& CommandStats::operator+=(const CommandStats& other) noexcept {
  for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += other.counts[k];
  return *this;
}

CommandStats command_stats(std::span<const Command> commands) noexcept {
  CommandStats stats;
  for (const auto& c : commands) ++stats.counts[static_cast<std::size_t>(c.kind())];
  return stats;
}

}  // namespace ceger
