#pragma once

// Corpus readers: CSV with a header row, JSON Lines, or a directory of .txt
// files. Documents keep their source order; documents with no tokens are
// dropped and counted in Corpus::dropped.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "psylex/corpus/corpus.hpp"
#include "psylex/csv.hpp"
#include "psylex/error.hpp"
#include "psylex/text/tokenizer.hpp"
#include "psylex/text/unicode.hpp"

namespace psylex {

enum class CorpusFormat { csv, jsonl, txt_dir };

struct CorpusOptions {
  std::string text_field = "text";
  /// Column/key holding document ids. When empty, or absent from a file, ids
  /// are generated from the row number (or the file name for txt_dir).
  std::string id_field = "id";
  std::string id;
  std::string language;
  std::string provenance;
};

inline std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "csv") return CorpusFormat::csv;
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "txt_dir" || name == "txt" || name == "dir" || name == "txt-dir" || name == "dir-of-txt")
    return CorpusFormat::txt_dir;
  return std::nullopt;
}

/// Guesses the format from the path: directories are txt_dir, otherwise the
/// file extension decides.
inline std::optional<CorpusFormat> guess_corpus_format(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return CorpusFormat::txt_dir;
  const auto ext = path.extension().string();
  if (ext == ".csv") return CorpusFormat::csv;
  if (ext == ".jsonl" || ext == ".ndjson") return CorpusFormat::jsonl;
  return std::nullopt;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

namespace detail {

inline void add_document(Corpus& c, std::unordered_set<std::string>& seen, std::string id,
                         std::string text) {
  if (!seen.insert(id).second) throw Error("duplicate document id '" + id + "'");
  bool has_token = false;
  for_each_token(text, [&](std::string&&) { has_token = true; });
  if (!has_token) {
    ++c.dropped;
    return;
  }
  c.documents.push_back({std::move(id), std::move(text)});
}

inline void load_csv(Corpus& c, std::string_view text, const CorpusOptions& opts) {
  const auto records = csv::parse(text);
  if (records.empty()) throw Error("corpus CSV is empty (a header row is required)");
  const auto& header = records.front().fields;
  const auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };
  const auto text_col = find(opts.text_field);
  if (!text_col) throw Error("corpus CSV has no column '" + opts.text_field + "'");
  const auto id_col = opts.id_field.empty() ? std::nullopt : find(opts.id_field);

  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(rec.fields.size()),
                       rec.line);
    std::string id = id_col ? rec.fields[*id_col] : "row" + std::to_string(r);
    add_document(c, seen, std::move(id), rec.fields[*text_col]);
  }
}

inline void load_jsonl(Corpus& c, std::string_view text, const CorpusOptions& opts) {
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  for (std::size_t start = 0; start < text.size();) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
    const auto it = obj.find(opts.text_field);
    if (it == obj.end()) throw ParseError("missing field '" + opts.text_field + "'", line_no);
    if (!it->is_string()) throw ParseError("field '" + opts.text_field + "' is not a string", line_no);

    std::string id = "line" + std::to_string(line_no);
    if (!opts.id_field.empty()) {
      if (auto id_it = obj.find(opts.id_field); id_it != obj.end())
        id = id_it->is_string() ? id_it->get<std::string>() : id_it->dump();
    }
    add_document(c, seen, std::move(id), it->get<std::string>());
  }
}

inline void load_txt_dir(Corpus& c, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  std::unordered_set<std::string> seen;
  for (const auto& f : files) {
    auto text = read_file(f);
    unicode::require_valid(text, f.string());
    add_document(c, seen, f.stem().string(), std::move(text));
  }
}

}  // namespace detail

inline Corpus load_corpus_text(std::string_view content, CorpusFormat format,
                               const CorpusOptions& opts = {}) {
  Corpus c;
  c.id = opts.id;
  c.language = opts.language;
  c.provenance = opts.provenance;
  unicode::require_valid(content, c.id.empty() ? "corpus" : c.id);
  if (format == CorpusFormat::csv)
    detail::load_csv(c, content, opts);
  else if (format == CorpusFormat::jsonl)
    detail::load_jsonl(c, content, opts);
  else
    throw Error("a directory corpus must be loaded from a path");
  return c;
}

inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                          const CorpusOptions& opts = {}) {
  CorpusOptions o = opts;
  if (o.id.empty()) o.id = path.stem().string();
  if (o.provenance.empty()) o.provenance = path.string();
  if (format != CorpusFormat::txt_dir) {
    const auto content = read_file(path);
    if (auto bad = unicode::find_invalid(content)) throw EncodingError(path.string(), *bad);
    return load_corpus_text(content, format, o);
  }
  if (!std::filesystem::is_directory(path)) throw Error("'" + path.string() + "' is not a directory");
  Corpus c;
  c.id = o.id;
  c.language = o.language;
  c.provenance = o.provenance;
  detail::load_txt_dir(c, path);
  return c;
}

}  // namespace psylex
