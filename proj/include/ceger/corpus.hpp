#pragma once

// JSONL corpus records: one object per line with keys id, asr, ref and,
// once a pipeline has run, a "results" object keyed by method name.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ceger/baselines.hpp"

namespace ceger {

struct MethodResult {
  std::string payload;
  std::size_t token_count = 0;
  std::optional<std::string> output;   // expanded text on success
  std::optional<ExpandFailure> error;  // set when expansion failed
};

struct CorpusRecord {
  std::string id;
  std::string asr;
  std::string ref;
  std::map<Method, MethodResult> results;
};

enum class CorpusErrorKind { Io, Schema, DuplicateId };

class CorpusError : public std::runtime_error {
 public:
  CorpusError(CorpusErrorKind kind, std::size_t line, const std::string& what);
  CorpusErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  CorpusErrorKind kind_;
  std::size_t line_;
};

/// Reads records in file order, skipping blank lines. Throws CorpusError.
std::vector<CorpusRecord> read_corpus(std::istream& in);
std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path);

/// One compact JSON object per line, keys in sorted order.
std::string to_jsonl_line(const CorpusRecord& record);
void write_corpus(std::ostream& out, std::span<const CorpusRecord> records);
void save_corpus(const std::filesystem::path& path, std::span<const CorpusRecord> records);

}  // namespace ceger
