#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psylex/error.hpp"
#include "psylex/lexicon/dictionary.hpp"
#include "psylex/text/stemmer.hpp"
#include "psylex/translate/annotation.hpp"
#include "psylex/translate/records.hpp"

namespace psylex {

/// Counts in the shape of the corrections table. `unstemmed_size` is the sum
/// of kept terms, as the table defines it; `dictionary_size` is what remains
/// after identical (surface, category) pairs collapse.
struct CorrectionStats {
  std::size_t input_size = 0;
  std::size_t correctly_translated = 0;
  std::size_t words_corrected = 0;
  std::size_t words_removed = 0;
  std::size_t new_words = 0;
  std::size_t unstemmed_size = 0;
  std::size_t dictionary_size = 0;
  std::optional<std::size_t> stemmed_size;
  /// Records without a decision, counted as accepted.
  std::size_t undecided = 0;

  friend bool operator==(const CorrectionStats&, const CorrectionStats&) = default;
};

enum class TermOrigin { accepted, corrected, added };

inline std::string_view to_string(TermOrigin o) {
  switch (o) {
    case TermOrigin::accepted: return "accepted";
    case TermOrigin::corrected: return "corrected";
    case TermOrigin::added: return "added";
  }
  return "accepted";
}

/// Where a merged term came from.
struct TermProvenance {
  std::string surface;
  std::string category;
  TermOrigin origin = TermOrigin::accepted;
  std::string record_id;
  std::string annotator;
};

struct MergeOptions {
  /// Reject sheets that leave records undecided instead of accepting them.
  bool strict = false;
};

struct MergeResult {
  Dictionary dictionary;
  CorrectionStats stats;
  std::vector<TermProvenance> provenance;  // one per kept term, in merge order
  /// Records updated with their final status, replacement and additions.
  TranslationSet translations;
};

/// Applies one annotator's decisions to a translation set. The dictionary uses
/// the target language and keeps the categories in order of first appearance.
inline MergeResult merge_decisions(const TranslationSet& ts, const std::vector<AnnotationDecision>& decisions,
                                   const MergeOptions& opts = {}) {
  const auto index = ts.index();
  std::unordered_map<std::string, const AnnotationDecision*> by_id;
  std::vector<std::string> problems;
  for (const auto& d : decisions) {
    if (!index.contains(d.record_id)) problems.push_back("decision for unknown record '" + d.record_id + "'");
    else if (!by_id.emplace(d.record_id, &d).second)
      problems.push_back("more than one decision for record '" + d.record_id + "'");
    for (const auto& p : validate_decision(d)) problems.push_back(d.record_id + ": " + p);
  }
  if (opts.strict)
    for (const auto& r : ts.records)
      if (!by_id.contains(r.id)) problems.push_back("record '" + r.id + "' has no decision");
  if (!problems.empty()) throw ConfigError(problems);

  MergeResult out;
  out.dictionary = Dictionary(ts.target_language, false);
  out.translations = ts;
  auto& stats = out.stats;
  stats.input_size = ts.records.size();

  auto keep = [&](std::string_view surface, const TranslationRecord& r, TermOrigin origin,
                  const std::string& annotator) {
    out.dictionary.add_category(r.category);
    TermEntry entry(surface, r.category);
    out.provenance.push_back({entry.surface(), r.category, origin, r.id, annotator});
    out.dictionary.add_entry(std::move(entry));
  };

  for (auto& r : out.translations.records) {
    const auto it = by_id.find(r.id);
    const AnnotationDecision* d = it == by_id.end() ? nullptr : it->second;
    const std::string annotator = d ? d->annotator : std::string();
    r.replacement.reset();
    r.additions.clear();
    if (!d) ++stats.undecided;
    if (!d || d->correct()) {
      r.status = TranslationStatus::accepted;
      ++stats.correctly_translated;
      try {
        keep(r.candidate, r, TermOrigin::accepted, annotator);
      } catch (const ParseError& e) {
        throw Error("record '" + r.id + "': candidate '" + r.candidate + "' is not a valid term: " + e.what());
      }
    } else if (d->remove) {
      r.status = TranslationStatus::removed;
      ++stats.words_removed;
    } else {
      r.status = TranslationStatus::corrected;
      r.replacement = *d->replacement;
      ++stats.words_corrected;
      keep(*d->replacement, r, TermOrigin::corrected, annotator);
    }
    if (d) {
      for (const auto& a : d->additions) {
        ++stats.new_words;
        keep(a, r, TermOrigin::added, annotator);
      }
      r.additions = d->additions;
    }
  }
  stats.unstemmed_size = stats.correctly_translated + stats.words_corrected + stats.new_words;
  stats.dictionary_size = out.dictionary.size();
  return out;
}

/// Stems every non-wildcard surface (each word of a phrase) and collapses
/// duplicate (stem, category) pairs. A dictionary already marked stemmed is
/// returned unchanged: Snowball stemmers are not idempotent, so stemming a
/// stem could merge entries that were distinct.
inline Dictionary stem_dictionary(const Dictionary& d, std::string_view language) {
  const Language lang = parse_language(language);
  if (!d.language().empty() && d.language() != language)
    throw Error("dictionary language '" + d.language() + "' does not match stemmer language '" +
                std::string(language) + "'");
  if (d.stemmed()) return d;

  Dictionary out(std::string(language), true);
  for (const auto& c : d.categories()) out.add_category(c);
  for (const auto& e : d.entries()) {
    if (e.wildcard()) {
      out.add_entry(e);
      continue;
    }
    std::string stemmed;
    for (auto part : e.tokens()) {
      if (!stemmed.empty()) stemmed += ' ';
      stemmed += stem(part, lang);
    }
    out.add_entry(TermEntry(stemmed, e.category(), e.goodness()));
  }
  return out;
}

}  // namespace psylex
