#include "ceger/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "json.hpp"

namespace ceger {

using nlohmann::json;

CorpusError::CorpusError(CorpusErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error(what), kind_(kind), line_(line) {}

namespace {

[[noreturn]] void schema_error(std::size_t line, const std::string& what) {
  throw CorpusError(CorpusErrorKind::Schema, line, "line " + std::to_string(line) + ": " + what);
}

std::string required_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(line, std::string("missing key \"") + key + "\"");
  if (!it->is_string()) schema_error(line, std::string("key \"") + key + "\" must be a string");
  return it->get<std::string>();
}

MethodResult result_from_json(const json& obj, std::size_t line) {
  if (!obj.is_object()) schema_error(line, "method result must be an object");
  MethodResult r;
  r.payload = required_string(obj, "payload", line);
  r.token_count = count_tokens(r.payload);
  if (auto it = obj.find("output"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) schema_error(line, "\"output\" must be a string");
    r.output = it->get<std::string>();
  }
  if (auto it = obj.find("error"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) schema_error(line, "\"error\" must be an object");
    r.error = ExpandFailure{required_string(*it, "code", line), required_string(*it, "message", line)};
  }
  return r;
}

CorpusRecord record_from_line(const std::string& text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) schema_error(line, "expected a JSON object");

  CorpusRecord record;
  record.id = required_string(obj, "id", line);
  record.asr = required_string(obj, "asr", line);
  record.ref = required_string(obj, "ref", line);
  if (auto it = obj.find("results"); it != obj.end()) {
    if (!it->is_object()) schema_error(line, "\"results\" must be an object");
    for (const auto& [name, value] : it->items()) {
      auto method = parse_method(name);
      if (!method) schema_error(line, "unknown method \"" + name + "\"");
      record.results.emplace(*method, result_from_json(value, line));
    }
  }
  return record;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n\v\f") == std::string::npos;
}

}  // namespace

std::vector<CorpusRecord> read_corpus(std::istream& in) {
  std::vector<CorpusRecord> records;
  std::set<std::string> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (is_blank(text)) continue;
    auto record = record_from_line(text, line);
    if (!seen.insert(record.id).second) {
      throw CorpusError(CorpusErrorKind::DuplicateId, line,
                        "line " + std::to_string(line) + ": duplicate id \"" + record.id + "\"");
    }
    records.push_back(std::move(record));
  }
  if (in.bad()) throw CorpusError(CorpusErrorKind::Io, line, "read error");
  return records;
}

std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError(CorpusErrorKind::Io, 0, "cannot open " + path.string());
  return read_corpus(in);
}

std::string to_jsonl_line(const CorpusRecord& record) {
  json obj = {{"id", record.id}, {"asr", record.asr}, {"ref", record.ref}};
  if (!record.results.empty()) {
    json results = json::object();
    for (const auto& [method, r] : record.results) {
      json entry = {{"payload", r.payload}, {"tokens", r.token_count}};
      if (r.output) entry["output"] = *r.output;
      if (r.error) entry["error"] = {{"code", r.error->code}, {"message", r.error->message}};
      results[std::string(method_name(method))] = std::move(entry);
    }
    obj["results"] = std::move(results);
  }
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

void write_corpus(std::ostream& out, std::span<const CorpusRecord> records) {
  for (const auto& r : records) out << to_jsonl_line(r) << '\n';
}

void save_corpus(const std::filesystem::path& path, std::span<const CorpusRecord> records) {
  std::ofstream out(path);
  if (!out) throw CorpusError(CorpusErrorKind::Io, 0, "cannot write " + path.string());
  write_corpus(out, records);
  if (!out) throw CorpusError(CorpusErrorKind::Io, 0, "write failed for " + path.string());
}

}  // namespace ceger
