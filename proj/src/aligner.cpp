#include "ceger/aligner.hpp"

#include <algorithm>
#include <cstdint>

namespace ceger {

std::size_t Alignment::distance() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [](const EditOp& op) { return op.kind() != EditKind::Match; }));
}

TokenSeq Alignment::hypothesis() const {
  std::vector<std::string> words;
  words.reserve(hyp_len);
  for (const auto& op : ops) words.insert(words.end(), op.hyp_words().begin(), op.hyp_words().end());
  return TokenSeq(std::move(words));
}

TokenSeq Alignment::reference() const {
  std::vector<std::string> words;
  words.reserve(ref_len);
  for (const auto& op : ops) words.insert(words.end(), op.ref_words().begin(), op.ref_words().end());
  return TokenSeq(std::move(words));
}

Alignment align(const TokenSeq& hyp, const TokenSeq& ref) {
  const std::size_t m = hyp.size();
  const std::size_t n = ref.size();
  const std::size_t width = n + 1;
  std::vector<std::uint32_t> cost((m + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return cost[i * width + j]; };

  for (std::size_t i = 0; i <= m; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= n; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0u : 1u);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment result;
  result.hyp_len = m;
  result.ref_len = n;
  result.ops.reserve(std::max(m, n));

  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    const std::uint32_t here = at(i, j);
    if (i > 0 && j > 0 && hyp[i - 1] == ref[j - 1] && at(i - 1, j - 1) == here) {
      result.ops.push_back(EditOp::match({hyp[i - 1]}));
      --i, --j;
    } else if (i > 0 && j > 0 && at(i - 1, j - 1) + 1 == here) {
      result.ops.push_back(EditOp::substitute({hyp[i - 1]}, {ref[j - 1]}));
      --i, --j;
    } else if (i > 0 && at(i - 1, j) + 1 == here) {
      result.ops.push_back(EditOp::remove({hyp[i - 1]}));
      --i;
    } else {
      result.ops.push_back(EditOp::insert({ref[j - 1]}));
      --j;
    }
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

std::size_t edit_distance(const TokenSeq& hyp, const TokenSeq& ref) {
  const std::size_t n = ref.size();
  std::vector<std::size_t> prev(n + 1);
  std::vector<std::size_t> curr(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= hyp.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t diag = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      curr[j] = std::min({diag, prev[j] + 1, curr[j - 1] + 1});
    }
    std::swap(prev, curr);
  }
  return prev[n];
}

double WerBreakdown::rate() const noexcept {
  if (ref_len == 0) return errors() == 0 ? 0.0 : 1.0;
  return static_cast<double>(errors()) / static_cast<double>(ref_len);
}

WerBreakdown& WerBreakdown::operator+=(const WerBreakdown& other) noexcept {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  ref_len += other.ref_len;
  return *this;
}

WerBreakdown breakdown(const Alignment& alignment) noexcept {
  WerBreakdown out;
  out.ref_len = alignment.ref_len;
  for (const auto& op : alignment.ops) {
    switch (op.kind()) {
      case EditKind::Match: break;
      case EditKind::Substitute: ++out.substitutions; break;
      case EditKind::Delete: ++out.deletions; break;
      case EditKind::Insert: ++out.insertions; break;
    }
  }
  return out;
}

WerBreakdown score_counts(const TokenSeq& hyp, const TokenSeq& ref) { return breakdown(align(hyp, ref)); }

Expected<WerBreakdown, EmptyReference> wer(const TokenSeq& hyp, const TokenSeq& ref) {
  if (ref.empty() && !hyp.empty()) return unexpected(EmptyReference{hyp.size()});
  return score_counts(hyp, ref);
}

}  // namespace ceger
