#include "ceger/baselines.hpp"

#include <algorithm>
#include <cctype>

#include "ceger/detail/scanner.hpp"

namespace ceger {

using detail::quote_words;
using detail::Scanner;

std::string_view method_name(Method method) noexcept {
  switch (method) {
    case Method::Ceger: return "ceger";
    case Method::FullRewrite: return "full";
    case Method::Span: return "span";
    case Method::PhrasePair: return "phrase";
    case Method::TargetOnly: return "target";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::size_t count_tokens(std::string_view payload) noexcept {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : payload) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

std::vector<EditRegion> edited_regions(const Alignment& alignment) {
  std::vector<EditRegion> regions;
  std::size_t hyp_index = 0;
  bool open = false;
  for (const auto& op : alignment.ops) {
    if (op.kind() == EditKind::Match) {
      open = false;
    } else {
      if (!open) {
        regions.push_back(EditRegion{hyp_index, {}, {}});
        open = true;
      }
      auto& r = regions.back();
      r.hyp_words.insert(r.hyp_words.end(), op.hyp_words().begin(), op.hyp_words().end());
      r.ref_words.insert(r.ref_words.end(), op.ref_words().begin(), op.ref_words().end());
    }
    hyp_index += op.hyp_words().size();
  }
  return regions;
}

namespace {

void append_entry(std::string& payload, const std::string& entry) {
  if (!payload.empty()) payload += ' ';
  payload += entry;
}

}  // namespace

Representation compile_ceger(const Alignment& alignment) {
  return Representation(Method::Ceger, serialize(compile(alignment)));
}

Representation compile_full_rewrite(const Alignment& alignment) {
  return Representation(Method::FullRewrite, detokenize(alignment.reference()));
}

Representation compile_span(const Alignment& alignment) {
  std::string payload;
  for (const auto& r : edited_regions(alignment)) {
    const std::size_t start = r.hyp_begin + 1;
    const std::size_t end = start + r.hyp_words.size();
    append_entry(payload, "[SPAN " + std::to_string(start) + ' ' + std::to_string(end) + ' ' +
                              quote_words(r.ref_words) + ']');
  }
  return Representation(Method::Span, std::move(payload));
}

Representation compile_phrase_pair(const Alignment& alignment) {
  const TokenSeq hyp = alignment.hypothesis();
  std::string payload;
  const auto regions = edited_regions(alignment);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    std::vector<std::string> src = r.hyp_words;
    std::vector<std::string> tgt = r.ref_words;
    if (src.empty()) {
      // Pure insertion: anchor on the preceding word, or the following one
      // at the start of the text.
      if (r.hyp_begin > 0) {
        src = {hyp[r.hyp_begin - 1]};
        tgt.insert(tgt.begin(), hyp[r.hyp_begin - 1]);
      } else if (r.hyp_begin < hyp.size()) {
        src = {hyp[r.hyp_begin]};
        tgt.push_back(hyp[r.hyp_begin]);
        // An insertion right after the first word would anchor on the same
        // word; fold it into this pair so sources never overlap.
        if (i + 1 < regions.size() && regions[i + 1].hyp_begin == 1 && regions[i + 1].hyp_words.empty()) {
          tgt.insert(tgt.end(), regions[i + 1].ref_words.begin(), regions[i + 1].ref_words.end());
          ++i;
        }
      }
    }
    append_entry(payload, "[PAIR " + quote_words(src) + " -> " + quote_words(tgt) + ']');
  }
  return Representation(Method::PhrasePair, std::move(payload));
}

Representation compile_target_only(const Alignment& alignment) {
  const TokenSeq hyp = alignment.hypothesis();
  std::string payload;
  for (const auto& r : edited_regions(alignment)) {
    if (r.ref_words.empty()) continue;
    const std::string anchor = r.hyp_begin > 0 ? quote_words(hyp.words().subspan(r.hyp_begin - 1, 1)) : "^";
    append_entry(payload, "[AT " + anchor + " PUT " + quote_words(r.ref_words) + " SUB " +
                              std::to_string(r.hyp_words.size()) + ']');
  }
  return Representation(Method::TargetOnly, std::move(payload));
}

Representation compile_representation(Method method, const Alignment& alignment) {
  switch (method) {
    case Method::Ceger: return compile_ceger(alignment);
    case Method::FullRewrite: return compile_full_rewrite(alignment);
    case Method::Span: return compile_span(alignment);
    case Method::PhrasePair: return compile_phrase_pair(alignment);
    case Method::TargetOnly: return compile_target_only(alignment);
  }
  return compile_ceger(alignment);
}

std::string_view to_string(BaselineErrorKind kind) noexcept {
  switch (kind) {
    case BaselineErrorKind::Parse: return "ParseError";
    case BaselineErrorKind::SpanOverlap: return "SpanOverlap";
    case BaselineErrorKind::SpanOutOfRange: return "SpanOutOfRange";
    case BaselineErrorKind::PhraseNotFound: return "PhraseNotFound";
    case BaselineErrorKind::AnchorNotFound: return "AnchorNotFound";
    case BaselineErrorKind::CountOutOfRange: return "CountOutOfRange";
  }
  return "?";
}

std::string describe(const BaselineError& error) {
  if (error.parse) return describe(*error.parse);
  return std::string(to_string(error.kind)) + " at entry " + std::to_string(error.entry_index);
}

namespace {

struct SpanEntry {
  std::size_t start;
  std::size_t end;
  std::vector<std::string> words;
};

struct PairEntry {
  std::vector<std::string> src;
  std::vector<std::string> tgt;
};

struct AnchorEntry {
  std::optional<std::string> anchor;  // nullopt = start of text
  std::vector<std::string> words;
  std::size_t consumed;
};

Expected<bool, ParseError> expect_keyword(Scanner& s, std::string_view expected) {
  const std::size_t start = s.pos();
  s.consume("[");
  if (s.keyword() != expected || !s.consume(" ")) {
    return unexpected(s.error_at(start + 1, ParseErrorKind::UnknownCommand, "expected " + std::string(expected)));
  }
  return true;
}

Expected<bool, ParseError> expect_literal(Scanner& s, std::string_view literal, ParseErrorKind kind) {
  if (!s.consume(literal)) return unexpected(s.error(kind, "expected '" + std::string(literal) + "'"));
  return true;
}

// Shorthand for early-returning a ParseError from an Expected.
#define CEGER_TRY(var, expr)                           \
  auto var = (expr);                                   \
  if (!var) return unexpected(var.error())

Expected<SpanEntry, ParseError> parse_span_entry(Scanner& s) {
  CEGER_TRY(kw, expect_keyword(s, "SPAN"));
  CEGER_TRY(start, s.count(false));
  CEGER_TRY(sep1, expect_literal(s, " ", ParseErrorKind::BadCount));
  CEGER_TRY(end, s.count(false));
  CEGER_TRY(sep2, expect_literal(s, " ", ParseErrorKind::EmptyPayload));
  CEGER_TRY(words, s.quoted(true));
  CEGER_TRY(closed, s.close_entry());
  return SpanEntry{*start, *end, std::move(words).value()};
}

Expected<PairEntry, ParseError> parse_pair_entry(Scanner& s) {
  CEGER_TRY(kw, expect_keyword(s, "PAIR"));
  CEGER_TRY(src, s.quoted(true));
  CEGER_TRY(arrow, expect_literal(s, " -> ", ParseErrorKind::UnknownCommand));
  CEGER_TRY(tgt, s.quoted(true));
  CEGER_TRY(closed, s.close_entry());
  return PairEntry{std::move(src).value(), std::move(tgt).value()};
}

Expected<AnchorEntry, ParseError> parse_anchor_entry(Scanner& s) {
  CEGER_TRY(kw, expect_keyword(s, "AT"));
  std::optional<std::string> anchor;
  if (!s.consume("^")) {
    const std::size_t at = s.pos();
    CEGER_TRY(words, s.quoted(false));
    if (words->size() != 1) return unexpected(s.error_at(at, ParseErrorKind::UnknownCommand, "anchor must be one word"));
    anchor = std::move(words->front());
  }
  CEGER_TRY(put, expect_literal(s, " PUT ", ParseErrorKind::UnknownCommand));
  CEGER_TRY(words, s.quoted(false));
  CEGER_TRY(sub, expect_literal(s, " SUB ", ParseErrorKind::UnknownCommand));
  CEGER_TRY(consumed, s.count(true));
  CEGER_TRY(closed, s.close_entry());
  return AnchorEntry{std::move(anchor), std::move(words).value(), *consumed};
}

#undef CEGER_TRY

BaselineError parse_failure(ParseError e) { return BaselineError{BaselineErrorKind::Parse, 0, std::move(e)}; }

void append_range(std::vector<std::string>& out, const TokenSeq& hyp, std::size_t from, std::size_t to) {
  out.insert(out.end(), hyp.words().begin() + static_cast<std::ptrdiff_t>(from),
             hyp.words().begin() + static_cast<std::ptrdiff_t>(to));
}

// First index >= from where `phrase` occurs in hyp, or hyp.size() + 1.
std::size_t find_phrase(const TokenSeq& hyp, std::span<const std::string> phrase, std::size_t from) {
  auto words = hyp.words();
  if (from > words.size()) return words.size() + 1;
  auto it = std::search(words.begin() + static_cast<std::ptrdiff_t>(from), words.end(), phrase.begin(), phrase.end());
  if (it == words.end() && !phrase.empty()) return words.size() + 1;
  return static_cast<std::size_t>(it - words.begin());
}

}  // namespace

TokenSeq expand_full_rewrite(std::string_view payload) { return tokenize(payload); }

Expected<TokenSeq, BaselineError> expand_span(const TokenSeq& hyp, std::string_view payload) {
  auto entries = detail::parse_entries<SpanEntry>(payload, parse_span_entry);
  if (!entries) return unexpected(parse_failure(entries.error()));

  const std::size_t m = hyp.size();
  std::vector<std::string> out;
  std::size_t cursor = 1;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const auto& e = (*entries)[i];
    if (e.end < e.start || e.end > m + 1) return unexpected(BaselineError{BaselineErrorKind::SpanOutOfRange, i, {}});
    if (e.start < cursor) return unexpected(BaselineError{BaselineErrorKind::SpanOverlap, i, {}});
    append_range(out, hyp, cursor - 1, e.start - 1);
    out.insert(out.end(), e.words.begin(), e.words.end());
    cursor = e.end;
  }
  append_range(out, hyp, cursor - 1, m);
  return TokenSeq(std::move(out));
}

Expected<TokenSeq, BaselineError> expand_phrase_pair(const TokenSeq& hyp, std::string_view payload) {
  auto entries = detail::parse_entries<PairEntry>(payload, parse_pair_entry);
  if (!entries) return unexpected(parse_failure(entries.error()));

  std::vector<std::string> out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const auto& e = (*entries)[i];
    const std::size_t at = find_phrase(hyp, e.src, cursor);
    if (at > hyp.size()) return unexpected(BaselineError{BaselineErrorKind::PhraseNotFound, i, {}});
    append_range(out, hyp, cursor, at);
    out.insert(out.end(), e.tgt.begin(), e.tgt.end());
    cursor = at + e.src.size();
  }
  append_range(out, hyp, cursor, hyp.size());
  return TokenSeq(std::move(out));
}

Expected<TokenSeq, BaselineError> expand_target_only(const TokenSeq& hyp, std::string_view payload) {
  auto entries = detail::parse_entries<AnchorEntry>(payload, parse_anchor_entry);
  if (!entries) return unexpected(parse_failure(entries.error()));

  const std::size_t m = hyp.size();
  std::vector<std::string> out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const auto& e = (*entries)[i];
    std::size_t after_anchor = 0;
    if (e.anchor) {
      const std::size_t at = find_phrase(hyp, std::span<const std::string>(&*e.anchor, 1), cursor);
      if (at >= m) return unexpected(BaselineError{BaselineErrorKind::AnchorNotFound, i, {}});
      after_anchor = at + 1;
    } else if (cursor != 0) {
      return unexpected(BaselineError{BaselineErrorKind::AnchorNotFound, i, {}});
    }
    if (e.consumed > m - after_anchor) return unexpected(BaselineError{BaselineErrorKind::CountOutOfRange, i, {}});
    append_range(out, hyp, cursor, after_anchor);
    out.insert(out.end(), e.words.begin(), e.words.end());
    cursor = after_anchor + e.consumed;
  }
  append_range(out, hyp, cursor, m);
  return TokenSeq(std::move(out));
}

namespace {

ExpandFailure failure_from(const BaselineError& e) {
  std::string code = e.parse ? std::string(to_string(e.parse->kind)) : std::string(to_string(e.kind));
  return ExpandFailure{std::move(code), describe(e)};
}

}  // namespace

Expected<TokenSeq, ExpandFailure> expand_payload(Method method, const TokenSeq& hyp, std::string_view payload,
                                                 ExpandMode mode) {
  auto lift = [](Expected<TokenSeq, BaselineError> r) -> Expected<TokenSeq, ExpandFailure> {
    if (!r) return unexpected(failure_from(r.error()));
    return std::move(r).value();
  };
  switch (method) {
    case Method::Ceger: {
      auto commands = parse(payload);
      if (!commands) {
        return unexpected(ExpandFailure{std::string(to_string(commands.error().kind)), describe(commands.error())});
      }
      auto out = expand(hyp, *commands, mode);
      if (!out) return unexpected(ExpandFailure{std::string(to_string(out.error().kind)), describe(out.error())});
      return std::move(out).value();
    }
    case Method::FullRewrite: return expand_full_rewrite(payload);
    case Method::Span: return lift(expand_span(hyp, payload));
    case Method::PhrasePair: return lift(expand_phrase_pair(hyp, payload));
    case Method::TargetOnly: return lift(expand_target_only(hyp, payload));
  }
  return unexpected(ExpandFailure{"UnknownMethod", "unknown method"});
}

}  // namespace ceger
