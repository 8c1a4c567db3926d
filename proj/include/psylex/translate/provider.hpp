#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "psylex/csv.hpp"
#include "psylex/detail/parallel.hpp"
#include "psylex/error.hpp"
#include "psylex/lexicon/dictionary.hpp"
#include "psylex/translate/records.hpp"
#include "psylex/text/unicode.hpp"

namespace psylex {

struct TranslationQuery {
  std::string term;
  /// Category name sent as context when hints are enabled; empty otherwise.
  std::string category_hint;
};

/// Failure a retry may fix (rate limiting, 5xx, dropped connection).
class TransientProviderError : public Error {
 public:
  using Error::Error;
};

/// Providers must tolerate concurrent translate() calls when
/// TranslateOptions::parallelism is above 1.
class TranslationProvider {
 public:
  virtual ~TranslationProvider() = default;
  /// Stable identifier, part of the cache key and recorded on every record.
  virtual std::string id() const = 0;
  /// One result per query, in order; nullopt when the provider has no
  /// translation for that term.
  virtual std::vector<std::optional<std::string>> translate(
      const std::vector<TranslationQuery>& batch, std::string_view source_language,
      std::string_view target_language) = 0;
};

/// Deterministic provider backed by a two-column CSV (source, translation).
/// A `source,translation` header row is optional.
class OfflineProvider : public TranslationProvider {
 public:
  explicit OfflineProvider(std::string_view fixture_csv, std::string id = "offline") : id_(std::move(id)) {
    unicode::require_valid(fixture_csv, "offline translation fixture");
    const auto records = csv::parse(fixture_csv);
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& f = records[i].fields;
      if (i == 0 && f.size() == 2 && f[0] == "source" && f[1] == "translation") continue;
      if (f.size() != 2) throw ParseError("offline fixture rows need 2 columns", records[i].line);
      table_.insert_or_assign(unicode::to_lower(f[0]), f[1]);
    }
  }

  std::string id() const override { return id_; }

  std::vector<std::optional<std::string>> translate(const std::vector<TranslationQuery>& batch,
                                                    std::string_view, std::string_view) override {
    std::vector<std::optional<std::string>> out;
    out.reserve(batch.size());
    for (const auto& q : batch) {
      const auto it = table_.find(q.term);
      out.push_back(it == table_.end() ? std::nullopt : std::optional(it->second));
    }
    return out;
  }

 private:
  std::string id_;
  std::unordered_map<std::string, std::string> table_;
};

/// On-disk response cache: one JSON object per line with provider, source and
/// target language, term, hint and translation. Later lines win.
class TranslationCache {
 public:
  TranslationCache() = default;
  explicit TranslationCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    needs_newline_ = !content.empty() && content.back() != '\n';
    std::size_t line_no = 0;
    for (std::size_t pos = 0; pos < content.size();) {
      auto end = content.find('\n', pos);
      const bool last = end == std::string::npos;
      if (last) end = content.size();
      const std::string_view line(content.data() + pos, end - pos);
      const std::size_t start = pos;
      pos = end + 1;
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        entries_[key(j.at("provider").get<std::string>(), j.at("source").get<std::string>(),
                     j.at("target").get<std::string>(), j.at("term").get<std::string>(),
                     j.value("hint", std::string()))] = j.at("translation").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        // A torn final line from an interrupted run is cut off; anything else is corruption.
        if (!last) throw ParseError(path_.string() + ": bad cache entry: " + e.what(), line_no);
        std::filesystem::resize_file(path_, start);
        needs_newline_ = false;
      }
    }
  }

  std::optional<std::string> find(std::string_view provider, std::string_view src,
                                  std::string_view tgt, const TranslationQuery& q) const {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find(key(provider, src, tgt, q.term, q.category_hint));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void store(std::string_view provider, std::string_view src, std::string_view tgt,
             const TranslationQuery& q, const std::string& translation) {
    std::lock_guard lock(mutex_);
    entries_[key(provider, src, tgt, q.term, q.category_hint)] = translation;
    if (path_.empty()) return;
    nlohmann::json j{{"provider", provider}, {"source", src}, {"target", tgt},
                     {"term", q.term},        {"translation", translation}};
    if (!q.category_hint.empty()) j["hint"] = q.category_hint;
    // One write per entry, so a crash leaves at most one torn line.
    std::string line = j.dump() + '\n';
    if (needs_newline_) line.insert(line.begin(), '\n');
    needs_newline_ = false;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.flush();
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

 private:
  static std::string key(std::string_view provider, std::string_view src, std::string_view tgt,
                         std::string_view term, std::string_view hint) {
    std::string k;
    for (auto part : {provider, src, tgt, term, hint}) {
      k += part;
      k += '\x1f';
    }
    return k;
  }

  std::filesystem::path path_;
  bool needs_newline_ = false;  // the file ends in a torn line
  mutable std::mutex mutex_;
  std::map<std::string, std::string> entries_;
};

struct TranslateOptions {
  std::string source_language = "en";
  std::string target_language;
  std::size_t batch_size = 128;
  /// Attempts per batch, including the first.
  std::size_t max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  /// Concurrent provider requests.
  std::size_t parallelism = 1;
  /// Send the category name along with each term.
  bool category_hints = false;
  TranslationCache* cache = nullptr;
  /// Replaceable for tests.
  std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
};

/// Some terms could not be translated. `partial` holds the records that were,
/// with untranslated ones left with an empty candidate.
class PartialTranslationError : public Error {
 public:
  PartialTranslationError(std::vector<std::string> ids, TranslationSet partial,
                          const std::string& cause = {})
      : Error(message(ids, cause)), untranslated_(std::move(ids)), partial_(std::move(partial)) {}

  const std::vector<std::string>& untranslated() const noexcept { return untranslated_; }
  const TranslationSet& partial() const noexcept { return partial_; }

 private:
  static std::string message(const std::vector<std::string>& ids, const std::string& cause) {
    std::string m = std::to_string(ids.size()) + " term(s) could not be translated:";
    for (std::size_t i = 0; i < ids.size() && i < 20; ++i) m += " " + ids[i];
    if (ids.size() > 20) m += " ...";
    if (!cause.empty()) m += " (last provider error: " + cause + ")";
    return m;
  }

  std::vector<std::string> untranslated_;
  TranslationSet partial_;
};

/// One pending record per dictionary entry, in dictionary order. Each distinct
/// (term, hint) is requested once; cached answers are never re-requested.
inline TranslationSet translate_terms(const Dictionary& d, TranslationProvider& provider,
                                      const TranslateOptions& opts) {
  if (opts.target_language.empty()) throw ConfigError("translate: target language is not set");
  if (opts.batch_size == 0) throw ConfigError("translate: batch size must be positive");
  const std::string provider_id = provider.id();

  std::vector<TranslationQuery> queries;
  std::map<std::pair<std::string, std::string>, std::size_t> query_index;
  std::vector<std::size_t> query_of_entry;
  for (const auto& e : d.entries()) {
    TranslationQuery q{e.surface(), opts.category_hints ? e.category() : std::string()};
    auto [it, inserted] = query_index.try_emplace({q.term, q.category_hint}, queries.size());
    if (inserted) queries.push_back(std::move(q));
    query_of_entry.push_back(it->second);
  }

  std::vector<std::optional<std::string>> answers(queries.size());
  std::vector<std::size_t> misses;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (opts.cache)
      answers[i] = opts.cache->find(provider_id, opts.source_language, opts.target_language, queries[i]);
    if (!answers[i]) misses.push_back(i);
  }

  const std::size_t batches = (misses.size() + opts.batch_size - 1) / opts.batch_size;
  std::mutex error_mutex;
  std::string first_error;
  detail::parallel_for(batches, std::max<std::size_t>(1, opts.parallelism), [&](std::size_t b) {
    const std::size_t begin = b * opts.batch_size;
    const std::size_t end = std::min(misses.size(), begin + opts.batch_size);
    std::vector<TranslationQuery> batch;
    for (std::size_t i = begin; i < end; ++i) batch.push_back(queries[misses[i]]);

    auto delay = opts.initial_backoff;
    for (std::size_t attempt = 1;; ++attempt) {
      try {
        auto result = provider.translate(batch, opts.source_language, opts.target_language);
        if (result.size() != batch.size())
          throw TransientProviderError("provider returned " + std::to_string(result.size()) +
                                       " results for " + std::to_string(batch.size()) + " terms");
        for (std::size_t i = 0; i < batch.size(); ++i) {
          auto& slot = answers[misses[begin + i]];
          slot = std::move(result[i]);
          if (slot && opts.cache)
            opts.cache->store(provider_id, opts.source_language, opts.target_language, batch[i], *slot);
        }
        return;
      } catch (const Error& e) {
        // Only transient failures are retried; the batch otherwise stays untranslated.
        const bool transient = dynamic_cast<const TransientProviderError*>(&e) != nullptr;
        if (!transient || attempt >= opts.max_attempts) {
          std::lock_guard lock(error_mutex);
          if (first_error.empty()) first_error = e.what();
          return;
        }
        opts.sleep(delay);
        delay *= 2;
      }
    }
  });

  TranslationSet ts;
  ts.source_language = opts.source_language;
  ts.target_language = opts.target_language;
  std::vector<std::string> failed;
  for (std::size_t e = 0; e < d.entries().size(); ++e) {
    const auto& entry = d.entries()[e];
    TranslationRecord r;
    r.id = record_id(entry.category(), entry.surface());
    r.category = entry.category();
    r.source = entry.surface();
    r.provider = provider_id;
    if (const auto& a = answers[query_of_entry[e]])
      r.candidate = *a;
    else
      failed.push_back(r.id);
    ts.records.push_back(std::move(r));
  }
  if (!failed.empty()) throw PartialTranslationError(std::move(failed), std::move(ts), first_error);
  return ts;
}

}  // namespace psylex
