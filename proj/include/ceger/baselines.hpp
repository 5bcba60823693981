#pragma once

// Competing compact edit representations, all compiled from the same
// alignment so their compactness and robustness can be compared.
//
// Payload grammars (same quoting rules as the command grammar; "''" is
// allowed where noted):
//
//   full rewrite : the reference text
//   span         : [SPAN start end 'words']          positions 1-based, end
//                                                    exclusive, words may be ''
//   phrase pair  : [PAIR 'src' -> 'tgt']             src/tgt may be ''
//   target only  : [AT 'anchor' PUT 'words' SUB k]   anchor ^ = start of text
//
// Phrase pairs and target-only entries locate their site by searching the
// hypothesis, so a repeated source phrase or anchor can land on the wrong
// occurrence. That ambiguity is intentional and is what the comparison with
// CEGER's explicit counts measures.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceger/aligner.hpp"
#include "ceger/engine.hpp"
#include "ceger/expected.hpp"
#include "ceger/grammar.hpp"

namespace ceger {

enum class Method { Ceger, FullRewrite, Span, PhrasePair, TargetOnly };

inline constexpr Method kAllMethods[] = {Method::Ceger, Method::FullRewrite, Method::Span, Method::PhrasePair,
                                         Method::TargetOnly};

/// Short name used on the command line and in result files ("ceger", "full", ...).
std::string_view method_name(Method method) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Number of whitespace-separated tokens in a payload.
std::size_t count_tokens(std::string_view payload) noexcept;

struct Representation {
  Method method = Method::Ceger;
  std::string payload;
  std::size_t token_count = 0;

  Representation() = default;
  Representation(Method m, std::string p) : method(m), payload(std::move(p)), token_count(count_tokens(payload)) {}
};

/// A maximal run of non-Match ops.
struct EditRegion {
  std::size_t hyp_begin = 0;  // 0-based index of the first hypothesis word the region touches
  std::vector<std::string> hyp_words;
  std::vector<std::string> ref_words;
};

std::vector<EditRegion> edited_regions(const Alignment& alignment);

Representation compile_ceger(const Alignment& alignment);
Representation compile_full_rewrite(const Alignment& alignment);
Representation compile_span(const Alignment& alignment);
Representation compile_phrase_pair(const Alignment& alignment);
/// Pure deletions cannot be expressed and are dropped.
Representation compile_target_only(const Alignment& alignment);

Representation compile_representation(Method method, const Alignment& alignment);

enum class BaselineErrorKind { Parse, SpanOverlap, SpanOutOfRange, PhraseNotFound, AnchorNotFound, CountOutOfRange };

std::string_view to_string(BaselineErrorKind kind) noexcept;

struct BaselineError {
  BaselineErrorKind kind = BaselineErrorKind::Parse;
  std::size_t entry_index = 0;
  std::optional<ParseError> parse;  // set when kind == Parse
};

std::string describe(const BaselineError& error);

TokenSeq expand_full_rewrite(std::string_view payload);
Expected<TokenSeq, BaselineError> expand_span(const TokenSeq& hyp, std::string_view payload);
Expected<TokenSeq, BaselineError> expand_phrase_pair(const TokenSeq& hyp, std::string_view payload);
Expected<TokenSeq, BaselineError> expand_target_only(const TokenSeq& hyp, std::string_view payload);

/// Uniform failure record for any method: `code` is the error kind name
/// ("PointerOverflow", "BadCount", "PhraseNotFound", ...).
struct ExpandFailure {
  std::string code;
  std::string message;
};

/// Parses and expands a payload of any method. `mode` only affects CEGER.
Expected<TokenSeq, ExpandFailure> expand_payload(Method method, const TokenSeq& hyp, std::string_view payload,
                                                 ExpandMode mode);

}  // namespace ceger
