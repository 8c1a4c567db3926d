#pragma once

// Document and corpus scoring.
//
// Category counting: within one category, positions are scanned left to right;
// at a free position the longest matching entry of that category counts once
// and covers its tokens. A single token matched by several entries of the same
// category therefore counts once, while it may count for several categories.
// A phrase counts as one match; the denominator is always the token count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psylex/corpus/corpus.hpp"
#include "psylex/detail/parallel.hpp"
#include "psylex/error.hpp"
#include "psylex/matrix.hpp"
#include "psylex/text/matcher.hpp"
#include "psylex/text/stemmer.hpp"
#include "psylex/text/tokenizer.hpp"

namespace psylex {

struct CategoryScores {
  std::vector<std::size_t> counts;  // matched units per category
  std::vector<double> scores;       // counts / token_count
  std::size_t token_count = 0;
};

struct ScoreOptions {
  std::string dictionary_id;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

namespace detail {

inline void check_stem_mode(const Matcher& m, bool stemmed_mode, std::string_view language) {
  if (stemmed_mode != m.stemmed())
    throw ConfigError(stemmed_mode
                          ? "stemmed matching needs a stemmed dictionary"
                          : "the dictionary is stemmed; corpus tokens must be stemmed too");
  if (!stemmed_mode) return;
  if (!is_supported_language(language))
    throw ConfigError("no stemmer for language '" + std::string(language) + "'");
  if (!m.language().empty() && m.language() != language)
    throw ConfigError("dictionary language '" + m.language() + "' does not match '" +
                      std::string(language) + "'");
}

inline void stem_tokens(std::vector<std::string>& tokens, Language lang) {
  for (auto& t : tokens) t = stem(t, lang);
}

inline std::vector<std::size_t> category_counts(const Matcher& m, const Matcher::Resolved& r) {
  const std::size_t categories = m.category_count();
  std::vector<std::size_t> counts(categories, 0);
  std::vector<std::size_t> next_free(categories, 0);
  std::vector<std::uint32_t> longest(categories, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t pos = 0; pos < r.size(); ++pos) {
    m.matches_at(r, pos, [&](std::uint32_t entry, std::uint32_t len) {
      const auto c = m.entry_category(entry);
      if (longest[c] == 0) touched.push_back(c);
      if (len > longest[c]) longest[c] = len;
    });
    for (auto c : touched) {
      if (pos >= next_free[c]) {
        ++counts[c];
        next_free[c] = pos + longest[c];
      }
      longest[c] = 0;
    }
    touched.clear();
  }
  return counts;
}

/// Non-overlapping occurrences of every entry.
inline std::vector<std::size_t> entry_counts(const Matcher& m, const Matcher::Resolved& r) {
  std::vector<std::size_t> counts(m.entry_count(), 0);
  std::vector<std::size_t> next_free(m.entry_count(), 0);
  m.for_each_match(r, [&](std::size_t pos, std::uint32_t entry, std::uint32_t len) {
    if (pos >= next_free[entry]) {
      ++counts[entry];
      next_free[entry] = pos + len;
    }
  });
  return counts;
}

inline std::string corpus_stem_language(const Matcher& m, const Corpus& corpus) {
  if (!m.stemmed()) return corpus.language;
  const std::string lang = corpus.language.empty() ? m.language() : corpus.language;
  check_stem_mode(m, true, lang);
  return lang;
}

/// Tokens of each document (stemmed when the matcher is), skipping documents
/// without tokens. Returns the kept document indices.
template <class Fn>
std::vector<std::size_t> for_each_document(const Matcher& m, const Corpus& corpus,
                                           std::size_t threads, Fn&& per_document) {
  const std::string lang = corpus_stem_language(m, corpus);
  const std::optional<Language> stem_lang =
      m.stemmed() ? std::optional(parse_language(lang)) : std::nullopt;

  std::vector<Matcher::Resolved> resolved(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    auto tokens = tokenize(corpus.documents[i].text).tokens;
    if (stem_lang) stem_tokens(tokens, *stem_lang);
    resolved[i] = m.resolve(tokens);
  });

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (resolved[i].size() > 0) kept.push_back(i);
  if (kept.empty())
    throw Error("corpus '" + corpus.id + "' has no documents with tokens to score");

  parallel_for(kept.size(), threads, [&](std::size_t row) {
    auto& r = resolved[kept[row]];
    per_document(row, r);
    r = {};
  });
  return kept;
}

inline std::vector<std::string> row_ids(const Corpus& corpus, const std::vector<std::size_t>& kept) {
  std::vector<std::string> ids;
  ids.reserve(kept.size());
  for (auto i : kept) ids.push_back(corpus.documents[i].id);
  return ids;
}

}  // namespace detail

/// Scores one tokenized document. With `stemmed_mode`, each token is stemmed
/// with the Snowball variant for `language` before lookup; the matcher must
/// have been built from a stemmed dictionary of that language.
inline CategoryScores score_document(const Matcher& m, TokenStream t, bool stemmed_mode = false,
                                     std::string_view language = {}) {
  detail::check_stem_mode(m, stemmed_mode, language);
  if (t.token_count() == 0) throw EmptyDocumentError("cannot score a document without tokens");
  if (stemmed_mode) detail::stem_tokens(t.tokens, parse_language(language));

  CategoryScores out;
  out.token_count = t.token_count();
  out.counts = detail::category_counts(m, m.resolve(t.tokens));
  out.scores.reserve(out.counts.size());
  for (auto c : out.counts)
    out.scores.push_back(static_cast<double>(c) / static_cast<double>(out.token_count));
  return out;
}

/// One row per document with at least one token, in corpus order. Stemmed
/// matchers stem the corpus tokens with the corpus (or dictionary) language.
inline ScoreMatrix score_corpus(const Matcher& m, const Corpus& corpus,
                                const ScoreOptions& opts = {}) {
  std::vector<std::vector<double>> rows(corpus.size());
  const auto kept = detail::for_each_document(
      m, corpus, opts.threads, [&](std::size_t row, const Matcher::Resolved& r) {
        const auto counts = detail::category_counts(m, r);
        auto& out = rows[row];
        out.reserve(counts.size());
        for (auto c : counts) out.push_back(static_cast<double>(c) / static_cast<double>(r.size()));
      });

  ScoreMatrix s(detail::row_ids(corpus, kept), m.categories());
  for (std::size_t row = 0; row < kept.size(); ++row)
    for (std::size_t c = 0; c < s.cols(); ++c) s.at(row, c) = rows[row][c];
  s.dictionary_id = opts.dictionary_id;
  s.corpus_id = corpus.id;
  return s;
}

/// Item matrices for every category in one pass over the corpus, in category
/// order. Columns are the category's entries in dictionary order.
inline std::vector<ItemMatrix> item_matrices(const Matcher& m, const Corpus& corpus,
                                             std::size_t threads = 0) {
  std::vector<std::vector<std::size_t>> columns(m.category_count());
  for (std::size_t e = 0; e < m.entry_count(); ++e) columns[m.entry_category(e)].push_back(e);

  std::vector<std::vector<double>> rows(corpus.size());
  const auto kept = detail::for_each_document(
      m, corpus, threads, [&](std::size_t row, const Matcher::Resolved& r) {
        const auto counts = detail::entry_counts(m, r);
        auto& out = rows[row];
        out.resize(counts.size());
        for (std::size_t e = 0; e < counts.size(); ++e)
          out[e] = static_cast<double>(counts[e]) / static_cast<double>(r.size());
      });

  const auto ids = detail::row_ids(corpus, kept);
  std::vector<ItemMatrix> out;
  out.reserve(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::vector<std::string> names;
    for (auto e : columns[c]) names.push_back(m.entry_surface(e));
    ItemMatrix x(ids, std::move(names));
    x.category = m.categories()[c];
    for (std::size_t row = 0; row < kept.size(); ++row)
      for (std::size_t j = 0; j < columns[c].size(); ++j) x.at(row, j) = rows[row][columns[c][j]];
    out.push_back(std::move(x));
  }
  return out;
}

inline ItemMatrix word_occurrence_matrix(const Matcher& m, const Corpus& corpus,
                                         std::string_view category, std::size_t threads = 0) {
  const auto key = category_key(category);
  for (std::size_t c = 0; c < m.category_count(); ++c) {
    if (category_key(m.categories()[c]) != key) continue;
    auto all = item_matrices(m, corpus, threads);
    return std::move(all[c]);
  }
  throw Error("category '" + std::string(category) + "' is not in the dictionary");
}

}  // namespace psylex
