#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace psylex {

struct Document {
  std::string id;
  std::string text;
};

/// An ordered document collection. Order is the source order and is what
/// keeps rows of score matrices from different dictionaries aligned.
struct Corpus {
  std::string id;
  std::string language;
  std::vector<Document> documents;
  std::string provenance;
  /// Documents dropped at load time because they had no tokens.
  std::size_t dropped = 0;

  std::size_t size() const noexcept { return documents.size(); }
};

}  // namespace psylex
