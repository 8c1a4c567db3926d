#pragma once

// Annotation sheets and decisions.
//
// Sheet CSV columns:
//   id,category,source,candidate,semantically_correct,contextually_correct,replacement,additions
//
// Flags are true/false (also accepted: 1/0, yes/no, y/n). Both flags empty with
// no replacement and no additions means the row is undecided. A row marked
// incorrect needs a replacement, or `-` to remove the term. `additions` holds
// extra translations for the same category, `;`-separated.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "psylex/csv.hpp"
#include "psylex/error.hpp"
#include "psylex/stats/agreement.hpp"
#include "psylex/text/unicode.hpp"
#include "psylex/translate/records.hpp"

namespace psylex {

inline constexpr std::string_view kRemoveMarker = "-";

struct SheetRow {
  std::string id;
  std::string category;
  std::string source;
  std::string candidate;

  friend bool operator==(const SheetRow&, const SheetRow&) = default;
};

struct AnnotationSheet {
  std::string batch_id;
  std::vector<SheetRow> rows;

  std::size_t size() const noexcept { return rows.size(); }
};

struct AnnotationDecision {
  std::string record_id;
  std::string category;
  std::string annotator;
  bool semantically_correct = true;
  bool contextually_correct = true;
  std::optional<std::string> replacement;
  bool remove = false;
  std::vector<std::string> additions;

  /// The binary judgment used for agreement.
  bool correct() const noexcept { return semantically_correct && contextually_correct; }

  friend bool operator==(const AnnotationDecision&, const AnnotationDecision&) = default;
};

inline const std::vector<std::string>& sheet_columns() {
  static const std::vector<std::string> cols{
      "id",       "category", "source",      "candidate", "semantically_correct",
      "contextually_correct", "replacement", "additions"};
  return cols;
}

inline std::optional<bool> parse_flag(std::string_view s) {
  std::string v = unicode::to_lower(s);
  std::erase_if(v, [](char c) { return c == ' ' || c == '\t'; });
  if (v == "true" || v == "1" || v == "yes" || v == "y") return true;
  if (v == "false" || v == "0" || v == "no" || v == "n") return false;
  return std::nullopt;
}

/// Problems with a decision, each prefixed by the field it concerns. Empty
/// when the decision is valid.
inline std::vector<std::string> validate_decision(const AnnotationDecision& d) {
  std::vector<std::string> problems;
  if (d.record_id.empty()) problems.push_back("id: must not be empty");
  if (d.replacement && d.replacement->find_first_not_of(" \t") == std::string::npos)
    problems.push_back("replacement: must not be blank");
  if (d.correct()) {
    if (d.replacement || d.remove)
      problems.push_back("replacement: must be empty when the translation is marked correct");
  } else if (!d.replacement && !d.remove) {
    problems.push_back("replacement: required when the translation is marked incorrect (use \"-\" to remove the term)");
  }
  if (d.replacement && d.remove) problems.push_back("replacement: cannot both replace and remove");
  for (const auto& a : d.additions)
    if (a.empty()) problems.push_back("additions: entries must not be empty");
  return problems;
}

/// Sheet rows for every record of a translation set, in record order.
inline AnnotationSheet sheet_from_translations(const TranslationSet& ts, std::string batch_id = {}) {
  AnnotationSheet sheet;
  sheet.batch_id = std::move(batch_id);
  for (const auto& r : ts.records) sheet.rows.push_back({r.id, r.category, r.source, r.candidate});
  return sheet;
}

/// The sheet as CSV, with the decision columns filled from `decisions` (one
/// annotator's; rows without a decision are left blank). Both the file export
/// and the HTTP export use this, so identical decisions give identical bytes.
inline std::string export_annotation_sheet(const AnnotationSheet& sheet,
                                           const std::vector<AnnotationDecision>& decisions = {}) {
  std::unordered_map<std::string_view, const AnnotationDecision*> by_id;
  for (const auto& d : decisions) by_id[d.record_id] = &d;

  std::string out;
  csv::append_record(out, sheet_columns());
  for (const auto& row : sheet.rows) {
    std::vector<std::string> f{row.id, row.category, row.source, row.candidate, "", "", "", ""};
    if (auto it = by_id.find(row.id); it != by_id.end()) {
      const auto& d = *it->second;
      f[4] = d.semantically_correct ? "true" : "false";
      f[5] = d.contextually_correct ? "true" : "false";
      f[6] = d.remove ? std::string(kRemoveMarker) : d.replacement.value_or("");
      f[7] = join_additions(d.additions);
    }
    csv::append_record(out, f);
  }
  return out;
}

/// Row-level problems found while importing a sheet; nothing is imported.
class AnnotationImportError : public Error {
 public:
  explicit AnnotationImportError(std::vector<std::string> problems)
      : Error(summary(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string summary(const std::vector<std::string>& problems) {
    std::string m = "annotation sheet rejected (" + std::to_string(problems.size()) + " problem(s))";
    for (std::size_t i = 0; i < problems.size() && i < 10; ++i) m += "\n  " + problems[i];
    if (problems.size() > 10) m += "\n  ...";
    return m;
  }

  std::vector<std::string> problems_;
};

struct ImportedSheet {
  AnnotationSheet sheet;
  std::vector<AnnotationDecision> decisions;  // decided rows only, in sheet order
};

/// Parses and validates a filled-in sheet. When `known` is given, every row id
/// must name a record of it, with a matching category.
inline ImportedSheet import_annotation_sheet(std::string_view text, std::string_view annotator,
                                             const TranslationSet* known = nullptr) {
  std::vector<std::string> problems;
  if (auto bad = unicode::find_invalid(text))
    throw AnnotationImportError({"invalid UTF-8 at byte offset " + std::to_string(*bad)});
  std::vector<csv::Record> records;
  try {
    records = csv::parse(text);
  } catch (const ParseError& e) {
    throw AnnotationImportError({e.what()});
  }
  if (records.empty() || records.front().fields != sheet_columns()) {
    std::string expected;
    for (const auto& c : sheet_columns()) expected += (expected.empty() ? "" : ",") + c;
    throw AnnotationImportError({"line 1: header must be `" + expected + "`"});
  }

  std::unordered_map<std::string, std::size_t> index;
  if (known) index = known->index();

  ImportedSheet out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    const std::string where = "line " + std::to_string(records[i].line) + ": ";
    if (f.size() != sheet_columns().size()) {
      problems.push_back(where + "expected " + std::to_string(sheet_columns().size()) +
                         " columns, found " + std::to_string(f.size()));
      continue;
    }
    SheetRow row{f[0], f[1], f[2], f[3]};
    if (!seen.insert(row.id).second) problems.push_back(where + "duplicate record id '" + row.id + "'");
    if (known) {
      const auto it = index.find(row.id);
      if (it == index.end()) {
        problems.push_back(where + "unknown record id '" + row.id + "'");
      } else if (category_key(known->records[it->second].category) != category_key(row.category)) {
        problems.push_back(where + "category '" + row.category + "' does not match record '" + row.id + "'");
      }
    }

    const bool sem_empty = f[4].find_first_not_of(" \t") == std::string::npos;
    const bool ctx_empty = f[5].find_first_not_of(" \t") == std::string::npos;
    const auto additions = split_additions(f[7]);
    const bool has_replacement = f[6].find_first_not_of(" \t") != std::string::npos;
    out.sheet.rows.push_back(row);
    if (sem_empty && ctx_empty && !has_replacement && additions.empty()) continue;  // undecided

    AnnotationDecision d;
    d.record_id = row.id;
    d.category = row.category;
    d.annotator = std::string(annotator);
    const auto sem = parse_flag(f[4]);
    const auto ctx = parse_flag(f[5]);
    if (!sem) problems.push_back(where + "semantically_correct: expected true/false, got '" + f[4] + "'");
    if (!ctx) problems.push_back(where + "contextually_correct: expected true/false, got '" + f[5] + "'");
    if (!sem || !ctx) continue;
    d.semantically_correct = *sem;
    d.contextually_correct = *ctx;
    if (has_replacement) {
      std::string_view rep = f[6];
      while (!rep.empty() && (rep.front() == ' ' || rep.front() == '\t')) rep.remove_prefix(1);
      while (!rep.empty() && (rep.back() == ' ' || rep.back() == '\t')) rep.remove_suffix(1);
      if (rep == kRemoveMarker)
        d.remove = true;
      else
        d.replacement = unicode::to_lower(rep);
    }
    d.additions = additions;
    for (const auto& p : validate_decision(d)) problems.push_back(where + p);
    out.decisions.push_back(std::move(d));
  }
  if (!problems.empty()) throw AnnotationImportError(std::move(problems));
  return out;
}

inline std::vector<AnnotationDecision> import_annotations(std::string_view text, std::string_view annotator,
                                                          const TranslationSet* known = nullptr) {
  return import_annotation_sheet(text, annotator, known).decisions;
}

/// Pairs two annotators' binary judgments per category, categories in order
/// of first appearance in `a`. Both must cover the same record ids.
inline std::vector<PairedRatings> agreement_table(const std::vector<AnnotationDecision>& a,
                                                  const std::vector<AnnotationDecision>& b) {
  std::unordered_map<std::string_view, const AnnotationDecision*> by_id;
  for (const auto& d : b) {
    if (!by_id.emplace(d.record_id, &d).second)
      throw Error("second annotator has two decisions for '" + d.record_id + "'");
  }
  std::vector<std::string> only_a;
  std::unordered_set<std::string_view> seen;
  std::vector<PairedRatings> out;
  std::map<std::string, std::size_t> category_row;
  for (const auto& d : a) {
    if (!seen.insert(d.record_id).second)
      throw Error("first annotator has two decisions for '" + d.record_id + "'");
    const auto it = by_id.find(d.record_id);
    if (it == by_id.end()) {
      only_a.push_back(d.record_id);
      continue;
    }
    const auto key = category_key(d.category);
    auto [row, inserted] = category_row.try_emplace(key, out.size());
    if (inserted) out.push_back({d.category, {}});
    out[row->second].items.emplace_back(d.correct(), it->second->correct());
  }
  std::vector<std::string> only_b;
  for (const auto& d : b)
    if (!seen.contains(d.record_id)) only_b.push_back(d.record_id);
  if (!only_a.empty() || !only_b.empty()) {
    std::string m = "annotators rated different records: " + std::to_string(only_a.size()) +
                    " only in the first, " + std::to_string(only_b.size()) + " only in the second";
    const auto& example = only_a.empty() ? only_b : only_a;
    m += " (e.g. '" + example.front() + "')";
    throw Error(m);
  }
  return out;
}

}  // namespace psylex
