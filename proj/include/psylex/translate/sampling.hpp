#pragma once

// Stratified sampling of translation records for second annotation.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the
// standard; bounded draws use rejection sampling instead of
// std::uniform_int_distribution (implementation-defined), so a seed gives the
// same sample on every platform.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "psylex/lexicon/dictionary.hpp"
#include "psylex/translate/annotation.hpp"
#include "psylex/translate/records.hpp"

namespace psylex {

namespace detail {

/// Uniform integer in [0, bound).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace detail

/// min(per_category, stratum size) records from each category, uniformly
/// without replacement. Strata are visited in order of first appearance;
/// within a stratum rows keep record order.
inline AnnotationSheet sample_annotation_batch(const TranslationSet& ts, std::size_t per_category = 25,
                                               std::uint64_t seed = 0, std::string batch_id = {}) {
  if (per_category == 0) throw Error("per_category must be at least 1");
  std::vector<std::string> order;
  std::vector<std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < ts.records.size(); ++i) {
    const auto key = category_key(ts.records[i].category);
    std::size_t s = 0;
    while (s < order.size() && order[s] != key) ++s;
    if (s == order.size()) {
      order.push_back(key);
      strata.emplace_back();
    }
    strata[s].push_back(i);
  }

  std::mt19937_64 rng(seed);
  AnnotationSheet sheet;
  sheet.batch_id = std::move(batch_id);
  for (auto& stratum : strata) {
    const std::size_t take = std::min(per_category, stratum.size());
    // Partial Fisher-Yates: the first `take` slots become the sample.
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = i + detail::bounded(rng, stratum.size() - i);
      std::swap(stratum[i], stratum[j]);
    }
    std::vector<std::size_t> picked(stratum.begin(), stratum.begin() + static_cast<std::ptrdiff_t>(take));
    std::sort(picked.begin(), picked.end());
    for (auto idx : picked) {
      const auto& r = ts.records[idx];
      sheet.rows.push_back({r.id, r.category, r.source, r.candidate});
    }
  }
  return sheet;
}

}  // namespace psylex
