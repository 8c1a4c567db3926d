#pragma once

#include <string>
#include <string_view>

#include "psylex/error.hpp"
#include "psylex/text/snowball.hpp"
#include "psylex/text/unicode.hpp"

namespace psylex {

enum class Language { en, nl, de, it };

inline bool is_supported_language(std::string_view tag) {
  return tag == "en" || tag == "nl" || tag == "de" || tag == "it";
}

inline Language parse_language(std::string_view tag) {
  if (tag == "en") return Language::en;
  if (tag == "nl") return Language::nl;
  if (tag == "de") return Language::de;
  if (tag == "it") return Language::it;
  throw Error("unsupported language '" + std::string(tag) + "' (expected en, nl, de or it)");
}

inline std::string_view language_tag(Language lang) {
  switch (lang) {
    case Language::en: return "en";
    case Language::nl: return "nl";
    case Language::de: return "de";
    case Language::it: return "it";
  }
  return "";
}

/// Snowball stem of a lowercase token.
inline std::string stem(std::string_view token, Language lang) {
  auto word = unicode::to_u32(token);
  switch (lang) {
    case Language::en: word = snowball::English::stem(std::move(word)); break;
    case Language::nl: word = snowball::Dutch::stem(std::move(word)); break;
    case Language::de: word = snowball::German::stem(std::move(word)); break;
    case Language::it: word = snowball::Italian::stem(std::move(word)); break;
  }
  return unicode::to_utf8(word);
}

inline std::string stem(std::string_view token, std::string_view language) {
  return stem(token, parse_language(language));
}

}  // namespace psylex
