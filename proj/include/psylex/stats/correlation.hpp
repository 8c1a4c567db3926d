#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "psylex/error.hpp"
#include "psylex/matrix.hpp"

namespace psylex {

struct PearsonResult {
  double r = 0;
  double p = 1;  // two-sided, t distribution with n - 2 df
  std::size_t n = 0;
};

inline PearsonResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                std::to_string(y.size()) + ")");
  const std::size_t n = x.size();
  if (n < 3) throw DegenerateError("pearson needs at least 3 pairs");

  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  // Second pass with the usual mean-correction term.
  double cx = 0, cy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    cx += dx, cy += dy;
    sxx += dx * dx, syy += dy * dy, sxy += dx * dy;
  }
  const double nd = static_cast<double>(n);
  sxx -= cx * cx / nd;
  syy -= cy * cy / nd;
  sxy -= cx * cy / nd;
  if (!(sxx > 0) || !(syy > 0)) throw DegenerateError("pearson: a variable has zero variance");

  PearsonResult out;
  out.n = n;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  // P(|T| >= |t|) with t^2 = df r^2 / (1 - r^2) equals I_{1 - r^2}(df/2, 1/2).
  const double one_minus_r2 = std::max(0.0, 1.0 - out.r * out.r);
  out.p = one_minus_r2 == 0 ? 0.0 : boost::math::ibeta((nd - 2) / 2, 0.5, one_minus_r2);
  return out;
}

inline PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(std::span<const double>(x), std::span<const double>(y));
}

inline double bonferroni_threshold(double alpha, std::size_t m) {
  if (m == 0) throw Error("Bonferroni correction needs at least one test");
  return alpha / static_cast<double>(m);
}

/// "p < 0.0023" for alpha 0.05 and m 22 (two significant digits).
inline std::string render_threshold(double alpha, std::size_t m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "p < %.2g", bonferroni_threshold(alpha, m));
  return buf;
}

/// "p < 0.05/22".
inline std::string render_threshold_fraction(double alpha, std::size_t m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "p < %g/%zu", alpha, m);
  return buf;
}

struct CorrelationResult {
  std::string grievance;
  std::string companion;
  std::vector<double> r;  // per corpus; NaN where undefined
  std::vector<double> p;
  double mean_r = std::numeric_limits<double>::quiet_NaN();
  double range_low = std::numeric_limits<double>::quiet_NaN();
  double range_high = std::numeric_limits<double>::quiet_NaN();
  bool significant = false;
  /// Some corpus had a zero-variance column, so r is undefined there.
  bool degenerate = false;
};

struct CorrelationOptions {
  double alpha = 0.05;
  /// Number of tests for the Bonferroni divisor; 0 means the number of
  /// categories in the first dictionary.
  std::size_t m = 0;
};

/// Correlates every column of `a` with every column of `b`, corpus by corpus.
/// a[j] and b[j] are the two dictionaries' score matrices for corpus j and
/// must list the same documents in the same order.
inline std::vector<CorrelationResult> correlate_dictionaries(const std::vector<ScoreMatrix>& a,
                                                             const std::vector<ScoreMatrix>& b,
                                                             const CorrelationOptions& opts = {}) {
  if (a.size() != b.size()) throw Error("correlate: the dictionaries were scored on different corpora");
  if (a.empty()) throw Error("correlate: no corpora");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].row_ids != b[j].row_ids)
      throw Error("correlate: score matrices for corpus " + std::to_string(j + 1) +
                  " are not row-aligned");
    if (a[j].columns != a.front().columns || b[j].columns != b.front().columns)
      throw Error("correlate: category columns differ between corpora");
  }
  const std::size_t m = opts.m ? opts.m : a.front().cols();
  const double threshold = bonferroni_threshold(opts.alpha, m);

  std::vector<CorrelationResult> out;
  for (std::size_t i = 0; i < a.front().cols(); ++i) {
    std::vector<std::vector<double>> xs;
    for (const auto& s : a) xs.push_back(s.column(i));
    for (std::size_t k = 0; k < b.front().cols(); ++k) {
      CorrelationResult res;
      res.grievance = a.front().columns[i];
      res.companion = b.front().columns[k];
      bool all_significant = true;
      for (std::size_t j = 0; j < a.size(); ++j) {
        try {
          const auto pr = pearson(xs[j], b[j].column(k));
          res.r.push_back(pr.r);
          res.p.push_back(pr.p);
          all_significant = all_significant && pr.p < threshold;
        } catch (const DegenerateError&) {
          res.r.push_back(std::numeric_limits<double>::quiet_NaN());
          res.p.push_back(std::numeric_limits<double>::quiet_NaN());
          res.degenerate = true;
        }
      }
      if (!res.degenerate) {
        double sum = 0;
        for (double r : res.r) sum += r;
        res.mean_r = sum / static_cast<double>(res.r.size());
        res.range_low = *std::min_element(res.r.begin(), res.r.end());
        res.range_high = *std::max_element(res.r.begin(), res.r.end());
        res.significant = all_significant;
      }
      out.push_back(std::move(res));
    }
  }
  return out;
}

/// The k significant pairs with the largest |mean r| (ties: companion name
/// ascending), padded with empty slots meaning "not significant".
inline std::vector<std::optional<CorrelationResult>> top_k_correlations(
    std::vector<CorrelationResult> results, std::size_t k = 3) {
  std::erase_if(results, [](const CorrelationResult& r) { return !r.significant; });
  std::sort(results.begin(), results.end(), [](const auto& x, const auto& y) {
    const double ax = std::abs(x.mean_r), ay = std::abs(y.mean_r);
    if (ax != ay) return ax > ay;
    return x.companion < y.companion;
  });
  std::vector<std::optional<CorrelationResult>> out;
  for (std::size_t i = 0; i < k; ++i)
    out.push_back(i < results.size() ? std::optional(results[i]) : std::nullopt);
  return out;
}

/// Fixed two decimals, without a "-0.00".
inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

/// "0.55 [0.29-0.81]": mean over corpora with the per-corpus minimum and maximum.
inline std::string render_mean_range(const CorrelationResult& r) {
  return fixed2(r.mean_r) + " [" + fixed2(r.range_low) + "-" + fixed2(r.range_high) + "]";
}

}  // namespace psylex
