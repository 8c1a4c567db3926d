#pragma once

// Run configuration, read from JSON. Relative paths resolve against the
// config file's directory. docs/formats.md lists every key.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "psylex/corpus/load.hpp"
#include "psylex/error.hpp"
#include "psylex/lexicon/formats.hpp"
#include "psylex/text/stemmer.hpp"

namespace psylex::service {

namespace fs = std::filesystem;

struct DictionarySpec {
  fs::path path;
  DictionaryFormat format = DictionaryFormat::grievance_csv;
  std::string language;
  /// The file already holds stems.
  bool stemmed = false;
  /// Stem an unstemmed dictionary on load and match against stemmed tokens.
  bool stem = false;
  std::string id;
};

struct CorpusSpec {
  std::string id;
  fs::path path;
  CorpusFormat format = CorpusFormat::csv;
  std::string text_field = "text";
  std::string id_field = "id";
};

struct ProviderSpec {
  std::string kind = "offline";  // offline | http
  fs::path fixture;
  std::string endpoint;
  std::string api_key_env = "PSYLEX_TRANSLATE_API_KEY";
  std::string id;
  std::size_t batch_size = 128;
  std::size_t parallelism = 1;
  std::size_t max_attempts = 5;
  long long initial_backoff_ms = 500;
  int timeout_seconds = 30;
  bool category_hints = false;
  fs::path cache;
};

struct AnnotationSpec {
  fs::path first;
  fs::path second;
  /// Restricts agreement to the records of this sheet.
  fs::path sample;
  std::string first_annotator = "first";
  std::string second_annotator = "second";
};

struct Config {
  std::string language;
  std::string source_language = "en";
  std::optional<DictionarySpec> source_dictionary;
  std::optional<DictionarySpec> dictionary;
  std::optional<DictionarySpec> companion_dictionary;
  std::vector<CorpusSpec> corpora;
  fs::path translations;
  AnnotationSpec annotations;
  ProviderSpec provider;
  fs::path output_dir = "out";
  std::size_t threads = 0;
  double alpha = 0.05;
  std::size_t top = 3;
  std::uint64_t seed = 0;
  std::size_t per_category = 25;
};

namespace detail {

class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& root, fs::path base) : root_(root), base_(std::move(base)) {}

  std::vector<std::string> problems;

  void problem(std::string key, std::string what) { problems.push_back(std::move(key) + ": " + std::move(what)); }

  template <class T>
  std::optional<T> get(const nlohmann::json& obj, std::string_view key, std::string_view where) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    const char* expected = nullptr;
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) expected = "expected true or false";
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) expected = "expected a string";
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_unsigned()) expected = "expected a non-negative integer";
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) expected = "expected an integer";
    } else {
      if (!it->is_number()) expected = "expected a number";
    }
    if (expected) {
      problem(std::string(where) + std::string(key), expected);
      return std::nullopt;
    }
    return it->get<T>();
  }

  fs::path path(const nlohmann::json& obj, std::string_view key, std::string_view where, bool must_exist) {
    const auto s = get<std::string>(obj, key, where);
    if (!s || s->empty()) return {};
    fs::path p(*s);
    if (p.is_relative()) p = base_ / p;
    if (must_exist && !fs::exists(p)) problem(std::string(where) + std::string(key), "no such file: " + p.string());
    return p;
  }

  void unknown_keys(const nlohmann::json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
    for (const auto& [k, v] : obj.items())
      if (std::find(known.begin(), known.end(), k) == known.end())
        problem(std::string(where) + k, "unknown key");
  }

  std::optional<DictionarySpec> dictionary(std::string_view key, const std::string& default_language) {
    const auto it = root_.find(key);
    if (it == root_.end() || it->is_null()) return std::nullopt;
    const std::string where = std::string(key) + ".";
    nlohmann::json obj = *it;
    if (obj.is_string()) obj = {{"path", obj}};
    if (!obj.is_object()) {
      problem(std::string(key), "expected an object or a path");
      return std::nullopt;
    }
    unknown_keys(obj, where, {"path", "format", "language", "stemmed", "stem", "id"});
    DictionarySpec d;
    d.path = path(obj, "path", where, true);
    if (d.path.empty()) problem(where + "path", "required");
    const auto format = get<std::string>(obj, "format", where);
    if (format) {
      if (*format == "grievance" || *format == "csv") d.format = DictionaryFormat::grievance_csv;
      else if (*format == "liwc" || *format == "dic") d.format = DictionaryFormat::liwc_dic;
      else problem(where + "format", "expected grievance or liwc, got '" + *format + "'");
    } else if (d.path.extension() == ".dic") {
      d.format = DictionaryFormat::liwc_dic;
    }
    d.language = get<std::string>(obj, "language", where).value_or(default_language);
    d.stemmed = get<bool>(obj, "stemmed", where).value_or(false);
    d.stem = get<bool>(obj, "stem", where).value_or(d.stemmed);
    d.id = get<std::string>(obj, "id", where).value_or(d.path.stem().string());
    if (d.stemmed && !d.stem)
      problem(where + "stem", "the dictionary holds stems, so corpus tokens must be stemmed too");
    if ((d.stem || d.stemmed) && !is_supported_language(d.language))
      problem(where + "language", "no stemmer for '" + d.language + "' (supported: en, nl, de, it)");
    return d;
  }

  const nlohmann::json& root_;
  fs::path base_;
};

}  // namespace detail

/// Builds a Config from parsed JSON; every problem found is reported in one
/// ConfigError.
inline Config config_from_json(const nlohmann::json& root, const fs::path& base = {}) {
  if (!root.is_object()) throw ConfigError("configuration must be a JSON object");
  detail::ConfigReader rd(root, base);
  rd.unknown_keys(root, "", {"language", "source_language", "source_dictionary", "dictionary", "stem",
                             "companion_dictionary", "corpora", "translations", "annotations", "provider",
                             "output_dir", "threads", "alpha", "top", "seed", "per_category"});
  Config c;
  c.language = rd.get<std::string>(root, "language", "").value_or("");
  if (!c.language.empty() && !is_supported_language(c.language))
    rd.problem("language", "unsupported language '" + c.language + "' (supported: en, nl, de, it)");
  c.source_language = rd.get<std::string>(root, "source_language", "").value_or("en");
  const auto stem = rd.get<bool>(root, "stem", "");
  c.source_dictionary = rd.dictionary("source_dictionary", c.source_language);
  c.dictionary = rd.dictionary("dictionary", c.language);
  if (c.dictionary && stem) {
    if (c.dictionary->stemmed && !*stem)
      rd.problem("stem", "false, but dictionary.stemmed is true; a stemmed dictionary needs stemmed tokens");
    c.dictionary->stem = *stem || c.dictionary->stemmed;
    if (c.dictionary->stem && !is_supported_language(c.dictionary->language))
      rd.problem("stem", "no stemmer for dictionary language '" + c.dictionary->language + "'");
  }
  c.companion_dictionary = rd.dictionary("companion_dictionary", c.language);

  if (const auto it = root.find("corpora"); it != root.end() && !it->is_null()) {
    if (!it->is_array()) {
      rd.problem("corpora", "expected an array");
    } else {
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto& obj = (*it)[i];
        const std::string where = "corpora[" + std::to_string(i) + "].";
        if (!obj.is_object()) {
          rd.problem(where.substr(0, where.size() - 1), "expected an object");
          continue;
        }
        rd.unknown_keys(obj, where, {"id", "path", "format", "text_field", "id_field"});
        CorpusSpec s;
        s.path = rd.path(obj, "path", where, true);
        if (s.path.empty()) rd.problem(where + "path", "required");
        s.id = rd.get<std::string>(obj, "id", where).value_or(s.path.stem().string());
        if (const auto f = rd.get<std::string>(obj, "format", where)) {
          if (auto parsed = parse_corpus_format(*f)) s.format = *parsed;
          else rd.problem(where + "format", "expected csv, jsonl or txt_dir, got '" + *f + "'");
        } else if (auto guessed = guess_corpus_format(s.path)) {
          s.format = *guessed;
        } else if (!s.path.empty()) {
          rd.problem(where + "format", "cannot tell the format of " + s.path.string() + "; set it explicitly");
        }
        s.text_field = rd.get<std::string>(obj, "text_field", where).value_or("text");
        s.id_field = rd.get<std::string>(obj, "id_field", where).value_or("id");
        for (const auto& other : c.corpora)
          if (other.id == s.id) rd.problem(where + "id", "duplicate corpus id '" + s.id + "'");
        c.corpora.push_back(std::move(s));
      }
    }
  }

  c.translations = rd.path(root, "translations", "", false);

  if (const auto it = root.find("annotations"); it != root.end() && !it->is_null()) {
    if (!it->is_object()) {
      rd.problem("annotations", "expected an object");
    } else {
      rd.unknown_keys(*it, "annotations.", {"first", "second", "sample", "first_annotator", "second_annotator"});
      c.annotations.first = rd.path(*it, "first", "annotations.", true);
      c.annotations.second = rd.path(*it, "second", "annotations.", true);
      c.annotations.sample = rd.path(*it, "sample", "annotations.", true);
      c.annotations.first_annotator = rd.get<std::string>(*it, "first_annotator", "annotations.").value_or("first");
      c.annotations.second_annotator =
          rd.get<std::string>(*it, "second_annotator", "annotations.").value_or("second");
    }
  }

  if (const auto it = root.find("provider"); it != root.end() && !it->is_null()) {
    if (!it->is_object()) {
      rd.problem("provider", "expected an object");
    } else {
      const auto& p = *it;
      const std::string w = "provider.";
      rd.unknown_keys(p, w, {"kind", "fixture", "endpoint", "api_key_env", "id", "batch_size", "parallelism",
                             "max_attempts", "initial_backoff_ms", "timeout_seconds", "category_hints", "cache"});
      auto& s = c.provider;
      s.kind = rd.get<std::string>(p, "kind", w).value_or("offline");
      if (s.kind != "offline" && s.kind != "http") rd.problem(w + "kind", "expected offline or http, got '" + s.kind + "'");
      s.fixture = rd.path(p, "fixture", w, true);
      if (s.kind == "offline" && s.fixture.empty()) rd.problem(w + "fixture", "required for the offline provider");
      s.endpoint = rd.get<std::string>(p, "endpoint", w).value_or("");
      s.api_key_env = rd.get<std::string>(p, "api_key_env", w).value_or(s.api_key_env);
      s.id = rd.get<std::string>(p, "id", w).value_or("");
      s.batch_size = rd.get<std::size_t>(p, "batch_size", w).value_or(s.batch_size);
      if (s.batch_size == 0) rd.problem(w + "batch_size", "must be positive");
      s.parallelism = rd.get<std::size_t>(p, "parallelism", w).value_or(s.parallelism);
      if (s.parallelism == 0) rd.problem(w + "parallelism", "must be positive");
      s.max_attempts = rd.get<std::size_t>(p, "max_attempts", w).value_or(s.max_attempts);
      if (s.max_attempts == 0) rd.problem(w + "max_attempts", "must be positive");
      s.initial_backoff_ms = rd.get<long long>(p, "initial_backoff_ms", w).value_or(s.initial_backoff_ms);
      if (s.initial_backoff_ms < 0) rd.problem(w + "initial_backoff_ms", "must not be negative");
      s.timeout_seconds = rd.get<int>(p, "timeout_seconds", w).value_or(s.timeout_seconds);
      if (s.timeout_seconds <= 0) rd.problem(w + "timeout_seconds", "must be positive");
      s.category_hints = rd.get<bool>(p, "category_hints", w).value_or(false);
      s.cache = rd.path(p, "cache", w, false);
    }
  }

  c.output_dir = rd.path(root, "output_dir", "", false);
  if (c.output_dir.empty()) c.output_dir = base / "out";
  c.threads = rd.get<std::size_t>(root, "threads", "").value_or(0);
  c.alpha = rd.get<double>(root, "alpha", "").value_or(0.05);
  if (!(c.alpha > 0 && c.alpha < 1)) rd.problem("alpha", "must be in (0, 1)");
  c.top = rd.get<std::size_t>(root, "top", "").value_or(3);
  if (c.top == 0) rd.problem("top", "must be positive");
  c.seed = rd.get<std::uint64_t>(root, "seed", "").value_or(0);
  c.per_category = rd.get<std::size_t>(root, "per_category", "").value_or(25);
  if (c.per_category == 0) rd.problem("per_category", "must be positive");

  if (!rd.problems.empty()) throw ConfigError(rd.problems);
  return c;
}

inline Config load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file " + path.string() + " does not exist");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

}  // namespace psylex::service
