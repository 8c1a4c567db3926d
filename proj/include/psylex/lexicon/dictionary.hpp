#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "psylex/error.hpp"
#include "psylex/text/unicode.hpp"

namespace psylex {

/// Longest phrase entry accepted, in tokens.
inline constexpr std::size_t kMaxPhraseTokens = 3;

/// The 22 categories of the Grievance Dictionary, in table order.
inline const std::array<std::string_view, 22> kGrievanceCategories = {
    "deadline",  "desperation", "fixation",     "frustration", "god",       "grievance",
    "hate",      "help",        "honour",       "impostor",    "jealousy",  "loneliness",
    "murder",    "paranoia",    "planning",     "relationship", "soldier",  "suicide",
    "surveillance", "threat",   "violence",     "weaponry"};

/// Case-insensitive, whitespace-trimmed comparison key for category names.
inline std::string category_key(std::string_view name) {
  while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) name.remove_prefix(1);
  while (!name.empty() && (name.back() == ' ' || name.back() == '\t' || name.back() == '\r'))
    name.remove_suffix(1);
  return unicode::to_lower(name);
}

/// One dictionary pattern: a lowercase word, a `prefix*` wildcard, or a phrase
/// of up to three space-separated words (only the last may carry the `*`).
class TermEntry {
 public:
  /// Normalizes `surface` (lowercase, whitespace runs collapsed) and validates it.
  TermEntry(std::string_view surface, std::string category,
            std::optional<double> goodness = std::nullopt)
      : surface_(normalize(surface)), category_(std::move(category)), goodness_(goodness) {
    validate();
  }

  const std::string& surface() const noexcept { return surface_; }
  const std::string& category() const noexcept { return category_; }
  const std::optional<double>& goodness() const noexcept { return goodness_; }
  bool wildcard() const noexcept { return surface_.back() == '*'; }
  bool is_phrase() const noexcept { return surface_.find(' ') != std::string::npos; }

  /// Space-separated parts; the final part keeps its `*`.
  std::vector<std::string_view> tokens() const {
    std::vector<std::string_view> out;
    std::string_view rest = surface_;
    while (true) {
      const auto sp = rest.find(' ');
      out.push_back(rest.substr(0, sp));
      if (sp == std::string_view::npos) break;
      rest.remove_prefix(sp + 1);
    }
    return out;
  }

  friend bool operator==(const TermEntry& a, const TermEntry& b) {
    return a.surface_ == b.surface_ && category_key(a.category_) == category_key(b.category_) &&
           a.goodness_ == b.goodness_;
  }
  friend bool operator<(const TermEntry& a, const TermEntry& b) {
    return std::tuple(category_key(a.category_), a.surface_, a.goodness_) <
           std::tuple(category_key(b.category_), b.surface_, b.goodness_);
  }

 private:
  static std::string normalize(std::string_view raw) {
    std::string out;
    std::size_t pos = 0;
    bool pending_space = false;
    while (pos < raw.size()) {
      const auto cp = unicode::decode(raw, pos);
      if (!cp) throw ParseError("term is not valid UTF-8");
      if (unicode::is_whitespace(*cp)) {
        pending_space = !out.empty();
        continue;
      }
      if (pending_space) out.push_back(' ');
      pending_space = false;
      unicode::append_utf8(out, unicode::to_lower(*cp));
    }
    return out;
  }

  void validate() const {
    if (surface_.empty()) throw ParseError("empty term");
    if (category_key(category_).empty()) throw ParseError("term '" + surface_ + "' has no category");
    const auto star = surface_.find('*');
    if (star != std::string::npos && star != surface_.size() - 1)
      throw ParseError("wildcard '*' must be the final character: '" + surface_ + "'");
    for (auto tok : tokens())
      if (tok == "*") throw ParseError("wildcard without a prefix: '" + surface_ + "'");
    if (tokens().size() > kMaxPhraseTokens)
      throw ParseError("phrase longer than " + std::to_string(kMaxPhraseTokens) +
                       " words: '" + surface_ + "'");
    if (goodness_ && !(*goodness_ >= 1.0 && *goodness_ <= 9.0))
      throw ParseError("goodness rating outside [1, 9] for '" + surface_ + "'");
  }

  std::string surface_;
  std::string category_;
  std::optional<double> goodness_;
};

/// A category lexicon. Built once by a parser or pipeline step, then treated as
/// immutable; concurrent readers need no synchronization.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(std::string language, bool stemmed = false)
      : language_(std::move(language)), stemmed_(stemmed) {}

  /// The Grievance layout: the 22 fixed categories, no entries yet.
  static Dictionary grievance(std::string language, bool stemmed = false) {
    Dictionary d(std::move(language), stemmed);
    for (auto name : kGrievanceCategories) d.add_category(std::string(name));
    return d;
  }

  const std::string& language() const noexcept { return language_; }
  bool stemmed() const noexcept { return stemmed_; }
  void set_language(std::string language) { language_ = std::move(language); }
  void set_stemmed(bool stemmed) { stemmed_ = stemmed; }

  const std::vector<std::string>& categories() const noexcept { return categories_; }
  const std::vector<TermEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Rows that collapsed into an existing (surface, category) pair.
  std::size_t duplicates_collapsed() const noexcept { return duplicates_; }

  /// Index of a category (case-insensitive), if present.
  std::optional<std::size_t> category_index(std::string_view name) const {
    const auto it = category_lookup_.find(category_key(name));
    if (it == category_lookup_.end()) return std::nullopt;
    return it->second;
  }

  /// Adds a category if it is not present yet; returns its index.
  std::size_t add_category(std::string name) {
    auto key = category_key(name);
    if (key.empty()) throw ParseError("empty category name");
    if (auto idx = category_index(key)) return *idx;
    category_lookup_.emplace(std::move(key), categories_.size());
    categories_.push_back(trim(name));
    return categories_.size() - 1;
  }

  /// Adds an entry whose category must already exist. Returns false when the
  /// (surface, category) pair is already present.
  bool add_entry(TermEntry entry) {
    const auto idx = category_index(entry.category());
    if (!idx) throw ParseError("unknown category '" + entry.category() + "'");
    // Store the canonical spelling of the category.
    TermEntry canonical(entry.surface(), categories_[*idx], entry.goodness());
    if (!seen_.insert(pair_key(canonical.surface(), *idx)).second) {
      ++duplicates_;
      return false;
    }
    entries_.push_back(std::move(canonical));
    return true;
  }

  /// Entries of one category, in insertion order.
  std::vector<const TermEntry*> entries_in(std::string_view category) const {
    std::vector<const TermEntry*> out;
    const auto key = category_key(category);
    for (const auto& e : entries_)
      if (category_key(e.category()) == key) out.push_back(&e);
    return out;
  }

  /// Same language, stemmed flag, category set and entry set.
  friend bool operator==(const Dictionary& a, const Dictionary& b) {
    if (a.language_ != b.language_ || a.stemmed_ != b.stemmed_) return false;
    if (a.categories_.size() != b.categories_.size()) return false;
    for (const auto& c : a.categories_)
      if (!b.category_index(c)) return false;
    return a.sorted_entries() == b.sorted_entries();
  }

  std::vector<TermEntry> sorted_entries() const {
    auto out = entries_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.remove_suffix(1);
    return std::string(s);
  }
  static std::string pair_key(const std::string& surface, std::size_t category) {
    return std::to_string(category) + '\x1f' + surface;
  }

  std::string language_;
  bool stemmed_ = false;
  std::vector<std::string> categories_;
  std::unordered_map<std::string, std::size_t> category_lookup_;
  std::vector<TermEntry> entries_;
  std::unordered_set<std::string> seen_;
  std::size_t duplicates_ = 0;
};

/// Keeps entries rated at least `threshold`; unrated entries always pass.
inline Dictionary filter_by_goodness(const Dictionary& d, double threshold) {
  Dictionary out(d.language(), d.stemmed());
  for (const auto& c : d.categories()) out.add_category(c);
  for (const auto& e : d.entries())
    if (!e.goodness() || *e.goodness() >= threshold) out.add_entry(e);
  return out;
}

}  // namespace psylex
