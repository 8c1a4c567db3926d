#pragma once

// Multi-pattern dictionary matcher.
//
// Each distinct token pattern (a literal word or a `prefix*` wildcard) gets a
// pattern id. A token resolves to the set of pattern ids it satisfies: at most
// one literal, found by hashing, plus every wildcard whose prefix it starts
// with, found by walking a byte trie of wildcard prefixes. Entries are then
// sequences of 1..3 pattern ids stored in a second trie, so phrase matches
// starting at a position are a depth-bounded walk over the per-token id sets.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psylex/lexicon/dictionary.hpp"

namespace psylex {

class Matcher {
 public:
  static constexpr std::uint32_t npos = UINT32_MAX;

  Matcher() {
    nodes_.emplace_back();
    prefix_nodes_.push_back(npos);
  }

  explicit Matcher(const Dictionary& d)
      : language_(d.language()), stemmed_(d.stemmed()), categories_(d.categories()) {
    nodes_.emplace_back();
    prefix_nodes_.push_back(npos);
    entries_.reserve(d.size());
    for (const auto& e : d.entries()) add(e, *d.category_index(e.category()));
  }

  const std::string& language() const noexcept { return language_; }
  bool stemmed() const noexcept { return stemmed_; }
  const std::vector<std::string>& categories() const noexcept { return categories_; }
  std::size_t category_count() const noexcept { return categories_.size(); }
  std::size_t entry_count() const noexcept { return entries_.size(); }
  std::size_t pattern_count() const noexcept { return pattern_count_; }

  std::uint32_t entry_category(std::size_t entry) const { return entries_[entry].category; }
  std::uint32_t entry_length(std::size_t entry) const { return entries_[entry].length; }
  const std::string& entry_surface(std::size_t entry) const { return entries_[entry].surface; }

  /// Appends the ids of every pattern `token` satisfies.
  void token_patterns(std::string_view token, std::vector<std::uint32_t>& out) const {
    if (auto it = literals_.find(token); it != literals_.end())
      out.push_back(it->second);
    if (prefix_nodes_.size() == 1) return;
    std::uint32_t node = 0;
    for (unsigned char byte : token) {
      auto it = prefix_edges_.find(edge_key(node, byte));
      if (it == prefix_edges_.end()) break;
      node = it->second;
      if (prefix_nodes_[node] != npos) out.push_back(prefix_nodes_[node]);
    }
  }

  /// Pattern ids per token of a document, flattened: the ids of token i are
  /// ids[offsets[i] .. offsets[i + 1]).
  struct Resolved {
    std::vector<std::uint32_t> ids;
    std::vector<std::size_t> offsets;

    std::size_t size() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  };

  template <class Tokens>
  Resolved resolve(const Tokens& tokens) const {
    Resolved r;
    r.offsets.reserve(tokens.size() + 1);
    r.offsets.push_back(0);
    for (const auto& t : tokens) {
      token_patterns(t, r.ids);
      r.offsets.push_back(r.ids.size());
    }
    return r;
  }

  /// Calls `f(entry, length)` for every entry matching at token `pos`.
  template <class F>
  void matches_at(const Resolved& r, std::size_t pos, F&& f) const {
    walk(r, pos, 0, 0, f);
  }

  /// Calls `f(pos, entry, length)` for every match in the document, by position.
  template <class F>
  void for_each_match(const Resolved& r, F&& f) const {
    for (std::size_t pos = 0; pos < r.size(); ++pos)
      matches_at(r, pos, [&](std::uint32_t entry, std::uint32_t len) { f(pos, entry, len); });
  }

 private:
  struct Node {
    std::vector<std::uint32_t> entries;  // entries whose pattern sequence ends here
  };
  struct EntryInfo {
    std::string surface;
    std::uint32_t category;
    std::uint32_t length;
  };

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  static std::uint64_t edge_key(std::uint32_t node, std::uint32_t label) {
    return (static_cast<std::uint64_t>(node) << 32) | label;
  }

  std::uint32_t pattern_id(std::string_view pattern) {
    if (pattern.back() != '*') {
      auto [it, inserted] = literals_.try_emplace(std::string(pattern), pattern_count_);
      if (inserted) ++pattern_count_;
      return it->second;
    }
    std::uint32_t node = 0;
    for (unsigned char byte : pattern.substr(0, pattern.size() - 1)) {
      auto [it, inserted] =
          prefix_edges_.try_emplace(edge_key(node, byte), static_cast<std::uint32_t>(prefix_nodes_.size()));
      if (inserted) prefix_nodes_.push_back(npos);
      node = it->second;
    }
    if (prefix_nodes_[node] == npos) prefix_nodes_[node] = pattern_count_++;
    return prefix_nodes_[node];
  }

  void add(const TermEntry& e, std::size_t category) {
    const auto entry = static_cast<std::uint32_t>(entries_.size());
    const auto parts = e.tokens();
    entries_.push_back({e.surface(), static_cast<std::uint32_t>(category),
                        static_cast<std::uint32_t>(parts.size())});
    std::uint32_t node = 0;
    for (auto part : parts) {
      const auto id = pattern_id(part);
      auto [it, inserted] =
          edges_.try_emplace(edge_key(node, id), static_cast<std::uint32_t>(nodes_.size()));
      if (inserted) nodes_.emplace_back();
      node = it->second;
    }
    nodes_[node].entries.push_back(entry);
  }

  template <class F>
  void walk(const Resolved& r, std::size_t pos, std::uint32_t node, std::uint32_t depth, F& f) const {
    if (pos >= r.size() || depth >= kMaxPhraseTokens) return;
    for (std::size_t k = r.offsets[pos]; k < r.offsets[pos + 1]; ++k) {
      auto it = edges_.find(edge_key(node, r.ids[k]));
      if (it == edges_.end()) continue;
      for (auto entry : nodes_[it->second].entries) f(entry, depth + 1);
      walk(r, pos + 1, it->second, depth + 1, f);
    }
  }

  std::string language_;
  bool stemmed_ = false;
  std::vector<std::string> categories_;
  std::vector<EntryInfo> entries_;

  std::uint32_t pattern_count_ = 0;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> literals_;
  std::unordered_map<std::uint64_t, std::uint32_t> prefix_edges_;  // (node, byte) -> node
  std::vector<std::uint32_t> prefix_nodes_;                         // node -> wildcard id or npos

  std::unordered_map<std::uint64_t, std::uint32_t> edges_;  // (node, pattern id) -> node
  std::vector<Node> nodes_;
};

inline Matcher build_matcher(const Dictionary& d) { return Matcher(d); }

}  // namespace psylex
