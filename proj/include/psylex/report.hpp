#pragma once

// Markdown and CSV renderings of the result tables: agreement (AC1 per
// category), corrections, internal reliability, and top correlations.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psylex/csv.hpp"
#include "psylex/lexicon/formats.hpp"
#include "psylex/stats/agreement.hpp"
#include "psylex/stats/correlation.hpp"
#include "psylex/stats/reliability.hpp"
#include "psylex/translate/merge.hpp"

namespace psylex::report {

/// "deadline" -> "Deadline".
inline std::string display_category(std::string name) {
  if (!name.empty() && name[0] >= 'a' && name[0] <= 'z') name[0] = static_cast<char>(name[0] - 32);
  return name;
}

/// 5448 -> "5,448".
inline std::string thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

inline std::string full(double v) {
  if (v != v) return "";
  return detail::format_double(v);
}

inline std::string markdown_row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + c + " |";
  return out + "\n";
}

inline std::string markdown_rule(std::size_t n) {
  std::string out = "|";
  for (std::size_t i = 0; i < n; ++i) out += "---|";
  return out + "\n";
}

// ---------------------------------------------------------------------------
// Agreement

struct AgreementColumn {
  std::string label;  // e.g. the language
  std::vector<AgreementResult> results;
  /// Terms per category in the final dictionary; n_items is shown when absent.
  std::optional<std::map<std::string, std::size_t>> term_counts;
};

/// "0.81 [0.60 - 1.00]", or the bare coefficient when there is no interval.
inline std::string render_ac1(const AgreementResult& r) {
  if (!r.ci_low) return fixed2(r.ac1);
  return fixed2(r.ac1) + " [" + fixed2(*r.ci_low) + " - " + fixed2(*r.ci_high) + "]";
}

inline std::size_t agreement_terms(const AgreementColumn& col, const AgreementResult& r) {
  if (!col.term_counts) return r.n_items;
  const auto it = col.term_counts->find(category_key(r.category));
  return it == col.term_counts->end() ? 0 : it->second;
}

inline std::string agreement_markdown(const std::vector<AgreementColumn>& cols) {
  std::vector<std::string> head{"Category"};
  for (const auto& c : cols) {
    head.push_back(c.label.empty() ? "No. terms" : c.label + " No. terms");
    head.push_back(c.label.empty() ? "AC1 [CI]" : c.label + " AC1 [CI]");
  }
  std::string out = markdown_row(head) + markdown_rule(head.size());

  std::vector<std::string> categories;
  for (const auto& c : cols)
    for (const auto& r : c.results)
      if (std::find(categories.begin(), categories.end(), category_key(r.category)) == categories.end())
        categories.push_back(category_key(r.category));

  std::vector<std::size_t> totals(cols.size(), 0);
  for (const auto& cat : categories) {
    std::vector<std::string> row{display_category(cat)};
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const AgreementResult* found = nullptr;
      for (const auto& r : cols[i].results)
        if (category_key(r.category) == cat) found = &r;
      if (!found) {
        row.insert(row.end(), {"", ""});
        continue;
      }
      const auto terms = agreement_terms(cols[i], *found);
      totals[i] += terms;
      row.push_back(thousands(terms));
      row.push_back(render_ac1(*found));
    }
    out += markdown_row(row);
  }
  if (!categories.empty()) {
    std::vector<std::string> row{"Total"};
    for (auto t : totals) row.insert(row.end(), {thousands(t), ""});
    out += markdown_row(row);
  }
  return out;
}

inline std::string agreement_csv(const std::vector<AgreementColumn>& cols) {
  std::string out;
  csv::append_record(out, {"label", "category", "n_terms", "n_items", "p_a", "p_e", "ac1", "variance",
                           "ci_low", "ci_high"});
  for (const auto& c : cols)
    for (const auto& r : c.results)
      csv::append_record(out, {c.label, r.category, std::to_string(agreement_terms(c, r)),
                               std::to_string(r.n_items), full(r.p_a), full(r.p_e), full(r.ac1),
                               full(r.variance), r.ci_low ? full(*r.ci_low) : "",
                               r.ci_high ? full(*r.ci_high) : ""});
  return out;
}

// ---------------------------------------------------------------------------
// Corrections

struct CorrectionRow {
  std::string label;
  CorrectionStats stats;
};

inline std::string corrections_markdown(const std::vector<CorrectionRow>& rows) {
  const std::vector<std::string> head{"Language",  "Correctly translated", "Words corrected",
                                      "Words removed", "New words", "Unstemmed dictionary",
                                      "Stemmed dictionary (final)"};
  std::string out = markdown_row(head) + markdown_rule(head.size());
  for (const auto& r : rows) {
    const auto& s = r.stats;
    out += markdown_row({r.label, thousands(s.correctly_translated), thousands(s.words_corrected),
                         thousands(s.words_removed), thousands(s.new_words), thousands(s.unstemmed_size),
                         s.stemmed_size ? thousands(*s.stemmed_size) : ""});
  }
  return out;
}

inline std::string corrections_csv(const std::vector<CorrectionRow>& rows) {
  std::string out;
  csv::append_record(out, {"label", "input_size", "correctly_translated", "words_corrected", "words_removed",
                           "new_words", "unstemmed_size", "dictionary_size", "stemmed_size", "undecided"});
  for (const auto& r : rows) {
    const auto& s = r.stats;
    csv::append_record(out, {r.label, std::to_string(s.input_size), std::to_string(s.correctly_translated),
                             std::to_string(s.words_corrected), std::to_string(s.words_removed),
                             std::to_string(s.new_words), std::to_string(s.unstemmed_size),
                             std::to_string(s.dictionary_size),
                             s.stemmed_size ? std::to_string(*s.stemmed_size) : "",
                             std::to_string(s.undecided)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reliability

struct ReliabilityColumn {
  std::string label;
  std::vector<std::string> corpus_ids;
  std::vector<ReliabilityResult> results;
};

inline std::string reliability_markdown(const std::vector<ReliabilityColumn>& cols) {
  std::vector<std::string> head{"Category"};
  for (const auto& c : cols) head.push_back(c.label.empty() ? "Mean alpha" : c.label);
  std::string out = markdown_row(head) + markdown_rule(head.size());

  std::vector<std::string> categories;
  for (const auto& c : cols)
    for (const auto& r : c.results)
      if (std::find(categories.begin(), categories.end(), category_key(r.category)) == categories.end())
        categories.push_back(category_key(r.category));
  for (const auto& cat : categories) {
    std::vector<std::string> row{display_category(cat)};
    for (const auto& c : cols) {
      std::string cell;
      for (const auto& r : c.results)
        if (category_key(r.category) == cat) cell = r.mean_alpha ? fixed2(*r.mean_alpha) : "NA";
      row.push_back(cell);
    }
    out += markdown_row(row);
  }
  return out;
}

inline std::string reliability_csv(const std::vector<ReliabilityColumn>& cols) {
  std::string out;
  csv::append_record(out, {"label", "category", "corpus", "alpha"});
  for (const auto& c : cols)
    for (const auto& r : c.results) {
      for (std::size_t j = 0; j < r.alphas.size(); ++j)
        csv::append_record(out, {c.label, r.category,
                                 j < c.corpus_ids.size() ? c.corpus_ids[j] : std::to_string(j + 1),
                                 r.alphas[j] ? full(*r.alphas[j]) : "NA"});
      csv::append_record(out, {c.label, r.category, "mean", r.mean_alpha ? full(*r.mean_alpha) : "NA"});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Correlations

inline std::string render_correlation_cell(const std::optional<CorrelationResult>& r) {
  if (!r) return "NS";
  std::string cell = r->companion + ": " + render_mean_range(*r);
  if (r->mean_r < 0) cell += " (negative)";
  return cell;
}

/// Top-k table, one row per first-dictionary category in order of appearance.
inline std::string correlations_markdown(const std::vector<CorrelationResult>& results, std::size_t k,
                                         double alpha, std::size_t m) {
  std::vector<std::string> head{"Category", "Strongest correlating categories"};
  for (std::size_t i = 1; i < k; ++i) head.emplace_back("");
  std::string out = markdown_row(head) + markdown_rule(head.size());

  std::vector<std::string> order;
  std::map<std::string, std::vector<CorrelationResult>> groups;
  for (const auto& r : results) {
    auto [it, inserted] = groups.try_emplace(r.grievance);
    if (inserted) order.push_back(r.grievance);
    it->second.push_back(r);
  }
  bool any_ns = false;
  for (const auto& g : order) {
    std::vector<std::string> row{display_category(g)};
    for (const auto& cell : top_k_correlations(groups[g], k)) {
      any_ns = any_ns || !cell;
      row.push_back(render_correlation_cell(cell));
    }
    out += markdown_row(row);
  }
  out += "\nAll listed correlations are significant in every corpus at the " + render_threshold(alpha, m) +
         " (" + render_threshold_fraction(alpha, m) + ") level.";
  if (any_ns) out += " NS = not significant (fewer than " + std::to_string(k) + " significantly correlating categories).";
  out += "\n";
  return out;
}

inline std::string correlations_csv(const std::vector<CorrelationResult>& results,
                                    const std::vector<std::string>& corpus_ids = {}) {
  std::string out;
  std::vector<std::string> head{"grievance", "companion", "mean_r", "range_low", "range_high"};
  const std::size_t corpora = results.empty() ? 0 : results.front().r.size();
  for (std::size_t j = 0; j < corpora; ++j) {
    const std::string id = j < corpus_ids.size() ? corpus_ids[j] : std::to_string(j + 1);
    head.push_back("r_" + id);
    head.push_back("p_" + id);
  }
  head.insert(head.end(), {"significant", "degenerate"});
  csv::append_record(out, head);
  for (const auto& r : results) {
    std::vector<std::string> row{r.grievance, r.companion, full(r.mean_r), full(r.range_low), full(r.range_high)};
    for (std::size_t j = 0; j < r.r.size(); ++j) {
      row.push_back(full(r.r[j]));
      row.push_back(full(r.p[j]));
    }
    row.push_back(r.significant ? "true" : "false");
    row.push_back(r.degenerate ? "true" : "false");
    csv::append_record(out, row);
  }
  return out;
}

}  // namespace psylex::report
