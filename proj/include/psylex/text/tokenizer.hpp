#pragma once

// Word segmentation: a token is a maximal run of letters, digits and attached
// combining marks. Everything else (punctuation, whitespace, hyphens,
// apostrophes, symbols, invalid bytes) separates tokens. Tokens are lowercased;
// tokens without any letter are dropped.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "psylex/text/unicode.hpp"

namespace psylex {

struct TokenStream {
  std::vector<std::string> tokens;

  std::size_t token_count() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
};

/// Calls `emit(std::string&&)` for each token of `text`, in order.
template <class Emit>
void for_each_token(std::string_view text, Emit&& emit) {
  std::string current;
  bool has_letter = false;
  auto flush = [&] {
    if (has_letter) emit(std::move(current));
    current.clear();
    has_letter = false;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const unsigned char b = static_cast<unsigned char>(text[pos]);
    // ASCII fast path.
    if (b < 0x80) {
      ++pos;
      if ((b >= 'a' && b <= 'z') || (b >= 'A' && b <= 'Z')) {
        current.push_back(static_cast<char>(b | 0x20));
        has_letter = true;
      } else if (b >= '0' && b <= '9') {
        current.push_back(static_cast<char>(b));
      } else {
        flush();
      }
      continue;
    }
    const auto cp = unicode::decode(text, pos);
    if (!cp) {
      ++pos;
      flush();
      continue;
    }
    if (unicode::is_letter(*cp)) {
      unicode::append_utf8(current, unicode::to_lower(*cp));
      has_letter = true;
    } else if (unicode::is_digit(*cp) || (!current.empty() && unicode::is_combining_mark(*cp))) {
      unicode::append_utf8(current, *cp);
    } else {
      flush();
    }
  }
  flush();
}

/// The language tag is accepted for interface symmetry with stemming; the
/// segmentation rules are the same for every supported language.
inline TokenStream tokenize(std::string_view text, std::string_view /*language*/ = {}) {
  TokenStream out;
  for_each_token(text, [&](std::string&& t) { out.tokens.push_back(std::move(t)); });
  return out;
}

}  // namespace psylex
