#pragma once

// Translation records and their CSV form:
//
//   id,category,source,candidate,provider,status,replacement,additions
//
// `id` is `<category>:<source surface>`, which is unique because a dictionary
// has no duplicate (surface, category) pairs. `additions` is `;`-separated.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psylex/csv.hpp"
#include "psylex/error.hpp"
#include "psylex/lexicon/dictionary.hpp"
#include "psylex/text/unicode.hpp"

namespace psylex {

enum class TranslationStatus { pending, accepted, corrected, removed };

inline std::string_view to_string(TranslationStatus s) {
  switch (s) {
    case TranslationStatus::pending: return "pending";
    case TranslationStatus::accepted: return "accepted";
    case TranslationStatus::corrected: return "corrected";
    case TranslationStatus::removed: return "removed";
  }
  return "pending";
}

inline std::optional<TranslationStatus> parse_status(std::string_view s) {
  if (s == "pending" || s.empty()) return TranslationStatus::pending;
  if (s == "accepted") return TranslationStatus::accepted;
  if (s == "corrected") return TranslationStatus::corrected;
  if (s == "removed") return TranslationStatus::removed;
  return std::nullopt;
}

inline std::string record_id(std::string_view category, std::string_view surface) {
  return category_key(category) + ':' + std::string(surface);
}

struct TranslationRecord {
  std::string id;
  std::string category;
  std::string source;     // source-language surface
  std::string candidate;  // provider output
  std::string provider;
  TranslationStatus status = TranslationStatus::pending;
  std::optional<std::string> replacement;
  std::vector<std::string> additions;

  friend bool operator==(const TranslationRecord&, const TranslationRecord&) = default;
};

struct TranslationSet {
  std::string source_language = "en";
  std::string target_language;
  std::vector<TranslationRecord> records;

  std::size_t size() const noexcept { return records.size(); }

  /// Record index by id.
  std::unordered_map<std::string, std::size_t> index() const {
    std::unordered_map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < records.size(); ++i) out.emplace(records[i].id, i);
    return out;
  }
};

inline std::vector<std::string> split_additions(std::string_view field) {
  std::vector<std::string> out;
  for (std::size_t start = 0; start <= field.size();) {
    auto end = field.find(';', start);
    if (end == std::string_view::npos) end = field.size();
    auto part = field.substr(start, end - start);
    while (!part.empty() && (part.front() == ' ' || part.front() == '\t')) part.remove_prefix(1);
    while (!part.empty() && (part.back() == ' ' || part.back() == '\t')) part.remove_suffix(1);
    if (!part.empty()) out.push_back(unicode::to_lower(part));
    start = end + 1;
  }
  return out;
}

inline std::string join_additions(const std::vector<std::string>& additions) {
  std::string out;
  for (const auto& a : additions) {
    if (!out.empty()) out += ';';
    out += a;
  }
  return out;
}

inline const std::vector<std::string>& translation_columns() {
  static const std::vector<std::string> cols{"id",       "category", "source",      "candidate",
                                             "provider", "status",   "replacement", "additions"};
  return cols;
}

inline std::string serialize_translations(const TranslationSet& ts) {
  std::string out;
  csv::append_record(out, translation_columns());
  for (const auto& r : ts.records)
    csv::append_record(out, {r.id, r.category, r.source, r.candidate, r.provider,
                             std::string(to_string(r.status)), r.replacement.value_or(""),
                             join_additions(r.additions)});
  return out;
}

inline TranslationSet parse_translations(std::string_view text, std::string source_language = "en",
                                         std::string target_language = {}) {
  unicode::require_valid(text, "translations CSV");
  const auto records = csv::parse(text);
  if (records.empty() || records.front().fields.size() < 6)
    throw ParseError("translations CSV needs the header `id,category,source,candidate,provider,status[,replacement,additions]`", 1);
  const auto& header = records.front().fields;
  const auto& expected = translation_columns();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (i >= expected.size() || header[i] != expected[i])
      throw ParseError("unexpected column '" + header[i] + "' in translations header", 1);

  TranslationSet ts;
  ts.source_language = std::move(source_language);
  ts.target_language = std::move(target_language);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    const auto line = records[i].line;
    if (f.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(f.size()),
                       line);
    TranslationRecord r;
    r.id = f[0];
    r.category = f[1];
    r.source = f[2];
    r.candidate = f[3];
    r.provider = f[4];
    const auto status = parse_status(f[5]);
    if (!status) throw ParseError("unknown status '" + f[5] + "'", line);
    r.status = *status;
    if (f.size() > 6 && !f[6].empty()) r.replacement = f[6];
    if (f.size() > 7) r.additions = split_additions(f[7]);
    if (r.id.empty()) throw ParseError("empty record id", line);
    if (r.status == TranslationStatus::corrected && !r.replacement)
      throw ParseError("record '" + r.id + "' is corrected but has no replacement", line);
    if (r.status == TranslationStatus::removed && r.replacement)
      throw ParseError("record '" + r.id + "' is removed but has a replacement", line);
    if (!seen.emplace(r.id, i).second) throw ParseError("duplicate record id '" + r.id + "'", line);
    ts.records.push_back(std::move(r));
  }
  return ts;
}

}  // namespace psylex
