#pragma once

// Readers and writers for the two dictionary file formats:
//
//   Grievance CSV   word,category[,goodness]   (header row required)
//   LIWC .dic       %\n<id>\t<name>\n...%\n<word>\t<id>[\t<id>...]\n...
//
// docs/formats.md has the full grammar.

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "psylex/csv.hpp"
#include "psylex/error.hpp"
#include "psylex/lexicon/dictionary.hpp"
#include "psylex/text/unicode.hpp"

namespace psylex {

enum class DictionaryFormat { grievance_csv, liwc_dic };

struct DictionaryOptions {
  std::string language = "en";
  bool stemmed = false;
  /// When set, the category list is fixed and rows naming any other category
  /// are rejected.
  std::optional<std::vector<std::string>> categories;
};

/// Options for the fixed 22-category Grievance layout.
inline DictionaryOptions grievance_layout(std::string language, bool stemmed = false) {
  DictionaryOptions o;
  o.language = std::move(language);
  o.stemmed = stemmed;
  o.categories.emplace(kGrievanceCategories.begin(), kGrievanceCategories.end());
  return o;
}

namespace detail {

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim_view(s);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline Dictionary make_dictionary(const DictionaryOptions& opts) {
  Dictionary d(opts.language, opts.stemmed);
  if (opts.categories)
    for (const auto& c : *opts.categories) d.add_category(c);
  return d;
}

}  // namespace detail

inline Dictionary parse_grievance_csv(std::string_view text, const DictionaryOptions& opts = {}) {
  unicode::require_valid(text, "dictionary CSV");
  const auto records = csv::parse(text);
  if (records.empty()) throw ParseError("missing header row `word,category[,goodness]`", 1);

  const auto& header = records.front().fields;
  const auto col = [&](std::size_t i) { return category_key(header[i]); };
  const bool has_goodness = header.size() == 3 && col(2) == "goodness";
  if (header.size() < 2 || header.size() > 3 || col(0) != "word" || col(1) != "category" ||
      (header.size() == 3 && !has_goodness))
    throw ParseError("header must be `word,category` or `word,category,goodness`", 1);

  Dictionary d = detail::make_dictionary(opts);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(rec.fields.size()),
                       rec.line);
    const auto category = detail::trim_view(rec.fields[1]);
    if (!d.category_index(category)) {
      if (opts.categories) throw ParseError("unknown category '" + std::string(category) + "'", rec.line);
      d.add_category(std::string(category));
    }
    std::optional<double> goodness;
    if (has_goodness && !detail::trim_view(rec.fields[2]).empty()) {
      goodness = detail::parse_double(rec.fields[2]);
      if (!goodness) throw ParseError("goodness is not a number: '" + rec.fields[2] + "'", rec.line);
    }
    try {
      d.add_entry(TermEntry(rec.fields[0], std::string(category), goodness));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), rec.line);
    }
  }
  return d;
}

inline Dictionary parse_liwc_dic(std::string_view text, const DictionaryOptions& opts = {}) {
  unicode::require_valid(text, "LIWC dictionary");
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }

  std::size_t i = 0;
  while (i < lines.size() && detail::trim_view(lines[i]).empty()) ++i;
  if (i == lines.size() || detail::trim_view(lines[i]) != "%")
    throw ParseError("expected opening `%` delimiter", i + 1);
  ++i;

  Dictionary d = detail::make_dictionary(opts);
  std::map<long, std::size_t> ids;  // LIWC id -> category index
  bool closed = false;
  for (; i < lines.size(); ++i) {
    const auto line = detail::trim_view(lines[i]);
    if (line.empty()) continue;
    if (line == "%") {
      closed = true;
      ++i;
      break;
    }
    const auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) throw ParseError("category line needs `id<TAB>name`", i + 1);
    long id = 0;
    const auto id_text = line.substr(0, sep);
    const auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (ec != std::errc() || ptr != id_text.data() + id_text.size())
      throw ParseError("category id is not an integer: '" + std::string(id_text) + "'", i + 1);
    const auto name = detail::trim_view(line.substr(sep));
    if (opts.categories && !d.category_index(name))
      throw ParseError("unknown category '" + std::string(name) + "'", i + 1);
    if (ids.contains(id)) throw ParseError("category id " + std::to_string(id) + " declared twice", i + 1);
    ids[id] = d.add_category(std::string(name));
  }
  if (!closed) throw ParseError("missing closing `%` delimiter after the category header");

  for (; i < lines.size(); ++i) {
    const auto line = detail::trim_view(lines[i]);
    if (line.empty()) continue;
    // Tab-separated: the word may contain spaces (phrases). Without tabs, the
    // first whitespace-separated field is the word.
    std::vector<std::string_view> fields;
    const char sep = line.find('\t') != std::string_view::npos ? '\t' : ' ';
    for (std::size_t start = 0; start <= line.size();) {
      auto end = line.find(sep, start);
      if (end == std::string_view::npos) end = line.size();
      const auto f = detail::trim_view(line.substr(start, end - start));
      if (!f.empty()) fields.push_back(f);
      start = end + 1;
    }
    if (fields.size() < 2) throw ParseError("word line needs `word<TAB>id`", i + 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      long id = 0;
      const auto [ptr, ec] = std::from_chars(fields[f].data(), fields[f].data() + fields[f].size(), id);
      if (ec != std::errc() || ptr != fields[f].data() + fields[f].size())
        throw ParseError("category id is not an integer: '" + std::string(fields[f]) + "'", i + 1);
      const auto it = ids.find(id);
      if (it == ids.end())
        throw ParseError("word '" + std::string(fields[0]) + "' references undeclared category id " +
                             std::to_string(id),
                         i + 1);
      try {
        d.add_entry(TermEntry(fields[0], d.categories()[it->second]));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), i + 1);
      }
    }
  }
  return d;
}

inline Dictionary parse_dictionary(std::string_view text, DictionaryFormat format,
                                   const DictionaryOptions& opts = {}) {
  return format == DictionaryFormat::grievance_csv ? parse_grievance_csv(text, opts)
                                                   : parse_liwc_dic(text, opts);
}

inline std::string serialize_grievance_csv(const Dictionary& d) {
  bool any_goodness = false;
  for (const auto& e : d.entries()) any_goodness |= e.goodness().has_value();
  std::string out = any_goodness ? "word,category,goodness\n" : "word,category\n";
  for (const auto& e : d.entries()) {
    std::vector<std::string> row{e.surface(), e.category()};
    if (any_goodness) row.push_back(e.goodness() ? detail::format_double(*e.goodness()) : "");
    csv::append_record(out, row);
  }
  return out;
}

/// LIWC output drops goodness ratings, which the format cannot carry.
inline std::string serialize_liwc_dic(const Dictionary& d) {
  std::string out = "%\n";
  for (std::size_t i = 0; i < d.categories().size(); ++i)
    out += std::to_string(i + 1) + '\t' + d.categories()[i] + '\n';
  out += "%\n";

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> ids;
  for (const auto& e : d.entries()) {
    auto [it, inserted] = ids.try_emplace(e.surface());
    if (inserted) order.push_back(e.surface());
    it->second.push_back(*d.category_index(e.category()) + 1);
  }
  for (const auto& word : order) {
    out += word;
    for (auto id : ids[word]) out += '\t' + std::to_string(id);
    out += '\n';
  }
  return out;
}

inline std::string serialize_dictionary(const Dictionary& d, DictionaryFormat format) {
  return format == DictionaryFormat::grievance_csv ? serialize_grievance_csv(d)
                                                   : serialize_liwc_dic(d);
}

}  // namespace psylex
