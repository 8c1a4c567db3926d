#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "psylex/error.hpp"
#include "psylex/matrix.hpp"

namespace psylex {

struct AlphaOptions {
  /// Drop items with zero variance before computing alpha (changes k).
  bool drop_constant_items = false;
};

namespace detail {

/// Sample (n - 1) variance, two-pass.
template <class Get>
double sample_variance(std::size_t n, Get&& get) {
  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += get(i);
  mean /= static_cast<double>(n);
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = get(i) - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

}  // namespace detail

/// Cronbach's alpha over the columns (items) of `x`, rows being observations:
///   alpha = k/(k-1) * (1 - sum_i var(item_i) / var(total))
inline double cronbach_alpha(const Matrix& x, const AlphaOptions& opts = {}) {
  const std::size_t n = x.rows();
  if (n < 2) throw DegenerateError("alpha needs at least 2 observations");

  std::vector<std::size_t> items;
  std::vector<double> item_var;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double v = detail::sample_variance(n, [&](std::size_t r) { return x.at(r, c); });
    if (opts.drop_constant_items && v == 0) continue;
    items.push_back(c);
    item_var.push_back(v);
  }
  const std::size_t k = items.size();
  if (k < 2) throw DegenerateError("alpha needs at least 2 items, got " + std::to_string(k));

  std::vector<double> total(n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (auto c : items) total[r] += x.at(r, c);
  const double total_var = detail::sample_variance(n, [&](std::size_t r) { return total[r]; });
  if (!(total_var > 0)) throw DegenerateError("total score has zero variance");

  const double sum_item_var = std::accumulate(item_var.begin(), item_var.end(), 0.0);
  const double kd = static_cast<double>(k);
  return kd / (kd - 1.0) * (1.0 - sum_item_var / total_var);
}

struct ReliabilityResult {
  std::string category;
  /// Alpha per corpus; empty where alpha is undefined for that corpus.
  std::vector<std::optional<double>> alphas;
  /// Mean over the corpora where alpha is defined.
  std::optional<double> mean_alpha;
};

inline ReliabilityResult average_alpha(const std::vector<std::optional<double>>& alphas,
                                       std::string category = {}) {
  if (alphas.empty()) throw Error("average_alpha needs at least one value");
  ReliabilityResult out{std::move(category), alphas, std::nullopt};
  double sum = 0;
  std::size_t defined = 0;
  for (const auto& a : alphas)
    if (a) sum += *a, ++defined;
  if (defined) out.mean_alpha = sum / static_cast<double>(defined);
  return out;
}

inline ReliabilityResult average_alpha(const std::vector<double>& alphas, std::string category = {}) {
  return average_alpha(std::vector<std::optional<double>>(alphas.begin(), alphas.end()),
                       std::move(category));
}

/// Per-category reliability across corpora. `per_corpus[j][c]` is the item
/// matrix of category c in corpus j; every corpus must list the same
/// categories in the same order.
inline std::vector<ReliabilityResult> reliability_table(
    const std::vector<std::vector<ItemMatrix>>& per_corpus, const AlphaOptions& opts = {}) {
  std::vector<ReliabilityResult> out;
  if (per_corpus.empty()) return out;
  const std::size_t categories = per_corpus.front().size();
  for (const auto& corpus : per_corpus)
    if (corpus.size() != categories) throw Error("corpora disagree on the category list");
  for (std::size_t c = 0; c < categories; ++c) {
    std::vector<std::optional<double>> alphas;
    for (const auto& corpus : per_corpus) {
      if (corpus[c].category != per_corpus.front()[c].category)
        throw Error("corpora disagree on the category list");
      try {
        alphas.push_back(cronbach_alpha(corpus[c], opts));
      } catch (const DegenerateError&) {
        alphas.push_back(std::nullopt);
      }
    }
    out.push_back(average_alpha(alphas, per_corpus.front()[c].category));
  }
  return out;
}

}  // namespace psylex
