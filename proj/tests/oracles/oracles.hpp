#pragma once

// Straightforward reference implementations used to check the library.
// They favour obviousness over speed.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

struct Entry {
  std::string surface;  // space-separated patterns, '*' suffix = prefix match
  std::size_t category;
};

inline std::vector<std::string> split_spaces(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto sp = s.find(' ', start);
    out.push_back(s.substr(start, sp - start));
    if (sp == std::string::npos) break;
    start = sp + 1;
  }
  return out;
}

inline bool pattern_ok(const std::string& pattern, const std::string& token) {
  if (!pattern.empty() && pattern.back() == '*')
    return token.compare(0, pattern.size() - 1, pattern, 0, pattern.size() - 1) == 0 &&
           token.size() >= pattern.size() - 1;
  return token == pattern;
}

/// Tokens the entry spans when it matches at `pos`, else 0.
inline std::size_t entry_len_at(const Entry& e, const std::vector<std::string>& tokens, std::size_t pos) {
  const auto parts = split_spaces(e.surface);
  if (pos + parts.size() > tokens.size()) return 0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!pattern_ok(parts[i], tokens[pos + i])) return 0;
  return parts.size();
}

/// Left-to-right scan per category, taking the longest entry at each position
/// and skipping the tokens it covers.
inline std::vector<std::size_t> category_counts(const std::vector<Entry>& entries, std::size_t categories,
                                                const std::vector<std::string>& tokens) {
  std::vector<std::size_t> counts(categories, 0);
  for (std::size_t c = 0; c < categories; ++c) {
    std::size_t pos = 0;
    while (pos < tokens.size()) {
      std::size_t best = 0;
      for (const auto& e : entries)
        if (e.category == c) best = std::max(best, entry_len_at(e, tokens, pos));
      if (best) {
        ++counts[c];
        pos += best;
      } else {
        ++pos;
      }
    }
  }
  return counts;
}

inline std::vector<std::size_t> entry_counts(const std::vector<Entry>& entries,
                                             const std::vector<std::string>& tokens) {
  std::vector<std::size_t> counts;
  for (const auto& e : entries) {
    std::size_t n = 0, pos = 0;
    while (pos < tokens.size()) {
      const auto len = entry_len_at(e, tokens, pos);
      if (len) {
        ++n;
        pos += len;
      } else {
        ++pos;
      }
    }
    counts.push_back(n);
  }
  return counts;
}

/// Cronbach's alpha from the item covariance matrix: k/(k-1) (1 - tr C / sum C).
/// rows[i][j] = observation i, item j. nullopt when undefined.
inline std::optional<double> alpha_cov(const std::vector<std::vector<double>>& rows) {
  using F = boost::multiprecision::cpp_bin_float_50;
  const std::size_t n = rows.size();
  if (n < 2) return std::nullopt;
  const std::size_t k = rows.front().size();
  if (k < 2) return std::nullopt;
  std::vector<F> mean(k, 0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < k; ++j) mean[j] += F(r[j]);
  for (auto& m : mean) m /= n;
  F trace = 0, total = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      F cov = 0;
      for (const auto& r : rows) cov += (F(r[a]) - mean[a]) * (F(r[b]) - mean[b]);
      cov /= (n - 1);
      total += cov;
      if (a == b) trace += cov;
    }
  if (total == 0) return std::nullopt;
  const F kk = k;
  return static_cast<double>(kk / (kk - 1) * (1 - trace / total));
}

struct Ac1 {
  double ac1;
  double variance;
};

/// Gwet's AC1 and its variance for two raters and two categories, in exact
/// rational arithmetic from the 2x2 table of proportions.
inline Ac1 gwet_ac1_exact(const std::vector<std::pair<bool, bool>>& items) {
  using Q = boost::multiprecision::cpp_rational;
  const std::size_t n = items.size();
  Q p[2][2] = {{0, 0}, {0, 0}};
  for (auto [a, b] : items) p[a ? 0 : 1][b ? 0 : 1] += Q(1, static_cast<long>(n));
  Q pi[2];
  for (int k = 0; k < 2; ++k) pi[k] = (p[k][0] + p[k][1] + p[0][k] + p[1][k]) / 2;
  const Q pa = p[0][0] + p[1][1];
  const Q pe = pi[0] * (1 - pi[0]) + pi[1] * (1 - pi[1]);
  const Q g = (pa - pe) / (1 - pe);
  Q t2 = -pa * pe;
  for (int k = 0; k < 2; ++k) t2 += p[k][k] * (1 - pi[k]);
  Q t3 = -pe * pe;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const Q w = 1 - (pi[k] + pi[l]) / 2;
      t3 += p[k][l] * w * w;
    }
  const Q var = (pa * (1 - pa) - 4 * (1 - g) * t2 + 4 * (1 - g) * (1 - g) * t3) /
                (Q(static_cast<long>(n)) * (1 - pe) * (1 - pe));
  return {static_cast<double>(g), static_cast<double>(var)};
}

struct Pearson {
  double r;
  double p;
};

/// Textbook Pearson r in 50-digit floating point, with the two-sided p-value
/// from the Student t distribution on n - 2 degrees of freedom.
inline Pearson pearson(const std::vector<double>& x, const std::vector<double>& y) {
  using F = boost::multiprecision::cpp_bin_float_50;
  const std::size_t n = x.size();
  F mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += F(x[i]), my += F(y[i]);
  mx /= n;
  my /= n;
  F sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const F dx = F(x[i]) - mx, dy = F(y[i]) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const F r = sxy / sqrt(sxx * syy);
  const F df = n - 2;
  if (1 - r * r <= 0) return {static_cast<double>(r), 0.0};
  const F t = abs(r) * sqrt(df / (1 - r * r));
  boost::math::students_t_distribution<F> dist(df);
  const F p = 2 * boost::math::cdf(boost::math::complement(dist, t));
  return {static_cast<double>(r), static_cast<double>(p)};
}

}  // namespace oracle
