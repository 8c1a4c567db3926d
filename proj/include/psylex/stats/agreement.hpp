#pragma once

// Gwet's AC1 for two raters and a binary rating (correct / not correct), with
// the two-rater variance estimator of Gwet (2008) and a normal-approximation
// confidence interval.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psylex/error.hpp"

namespace psylex {

struct PairedRatings {
  std::string category;
  /// (rater 1, rater 2); true = correctly translated.
  std::vector<std::pair<bool, bool>> items;
};

struct AgreementResult {
  std::string category;
  std::size_t n_items = 0;
  double p_a = 0;
  double p_e = 0;
  double ac1 = 0;
  double variance = 0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
};

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

inline AgreementResult gwet_ac1(const PairedRatings& r, double z = kZ95) {
  const std::size_t n = r.items.size();
  if (n == 0) throw DegenerateError("AC1 needs at least one rated item");

  // p[k][l]: share of items rater 1 put in k and rater 2 in l (0 = true, 1 = false).
  double p[2][2] = {{0, 0}, {0, 0}};
  for (auto [a, b] : r.items) p[a ? 0 : 1][b ? 0 : 1] += 1;
  const double nd = static_cast<double>(n);
  for (auto& row : p)
    for (auto& cell : row) cell /= nd;

  const double pi[2] = {(p[0][0] + p[0][1] + p[0][0] + p[1][0]) / 2,
                        (p[1][0] + p[1][1] + p[0][1] + p[1][1]) / 2};
  AgreementResult out;
  out.category = r.category;
  out.n_items = n;
  out.p_a = p[0][0] + p[1][1];
  out.p_e = pi[0] * (1 - pi[0]) + pi[1] * (1 - pi[1]);
  out.ac1 = (out.p_a - out.p_e) / (1 - out.p_e);

  const double g = out.ac1;
  double diag = 0;
  for (int k = 0; k < 2; ++k) diag += p[k][k] * (1 - pi[k]);
  double cross = 0;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const double w = 1 - (pi[k] + pi[l]) / 2;
      cross += p[k][l] * w * w;
    }
  const double inner = out.p_a * (1 - out.p_a) - 4 * (1 - g) * (diag - out.p_a * out.p_e) +
                       4 * (1 - g) * (1 - g) * (cross - out.p_e * out.p_e);
  out.variance = inner / (nd * (1 - out.p_e) * (1 - out.p_e));

  if (out.variance > 0) {
    const double half = z * std::sqrt(out.variance);
    out.ci_low = std::max(-1.0, g - half);
    out.ci_high = std::min(1.0, g + half);
  }
  return out;
}

/// One AC1 row per category, in input order.
inline std::vector<AgreementResult> agreement_report(const std::vector<PairedRatings>& batches) {
  std::vector<AgreementResult> out;
  out.reserve(batches.size());
  for (const auto& b : batches) out.push_back(gwet_ac1(b));
  return out;
}

}  // namespace psylex
