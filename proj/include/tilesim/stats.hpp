#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace tilesim {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
};

inline MeanStd mean_std(std::span<const double> xs) {
  if (xs.empty()) return {};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (xs.size() - 1))};
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 1.0;
};

// Ordinary least squares of y against x.
inline LinearFit ols_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("ols_fit needs at least two points");
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.stderr_slope = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  return fit;
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("pearson needs at least two points");
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Mann-Kendall trend statistic, normal-approximated z with tie correction.
// |z| > 2.576 rejects "no trend" at the two-sided 0.01 level.
inline double mann_kendall_z(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 4) throw std::invalid_argument("mann_kendall_z needs at least four points");
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      s += xs[j] > xs[i] ? 1 : xs[j] < xs[i] ? -1 : 0;
  // tie groups
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  double var = n * (n - 1.0) * (2.0 * n + 5.0) / 18.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    if (t > 1) var -= t * (t - 1.0) * (2.0 * t + 5.0) / 18.0;
    i = j;
  }
  if (var <= 0.0) return 0.0;
  const double num = s > 0 ? s - 1.0 : s < 0 ? s + 1.0 : 0.0;
  return num / std::sqrt(var);
}

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
};

// Two-sample homogeneity chi-square over matching categories. Categories with
// pooled expectation below `min_expected` are merged into one bin.
inline ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b,
                                       double min_expected = 5.0) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("chi_square_two_sample: mismatched categories");
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]);
  }
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi_square_two_sample: empty sample");
  const double total = na + nb;

  // Merge sparse categories so the asymptotic distribution applies.
  std::vector<std::pair<double, double>> bins;
  double rest_a = 0.0, rest_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pooled = static_cast<double>(a[i] + b[i]);
    if (pooled * na / total < min_expected || pooled * nb / total < min_expected) {
      rest_a += static_cast<double>(a[i]);
      rest_b += static_cast<double>(b[i]);
    } else {
      bins.emplace_back(static_cast<double>(a[i]), static_cast<double>(b[i]));
    }
  }
  if (rest_a + rest_b > 0.0) bins.emplace_back(rest_a, rest_b);
  if (bins.size() < 2) throw std::invalid_argument("chi_square_two_sample: too few usable bins");

  double stat = 0.0;
  for (auto [ca, cb] : bins) {
    const double pooled = ca + cb;
    const double ea = pooled * na / total;
    const double eb = pooled * nb / total;
    stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
  }
  return {stat, static_cast<int>(bins.size()) - 1};
}

// Upper tail of the chi-square distribution via the regularized incomplete
// gamma function (series + continued fraction, Numerical Recipes style).
inline double chi_square_upper_tail(double statistic, int dof) {
  if (statistic < 0.0 || dof < 1) throw std::invalid_argument("chi_square_upper_tail: bad input");
  const double a = dof / 2.0, x = statistic / 2.0;
  if (x == 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {  // lower series, return 1 - P
    double term = 1.0 / a, sum = term, ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
  }
  // continued fraction for Q directly
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

}  // namespace tilesim
