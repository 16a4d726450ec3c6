#pragma once

// Goodness-of-fit helpers: Kolmogorov-Smirnov statistics with asymptotic
// p-values, and running moment summaries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace polyagamma {

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17 * sum) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Asymptotic critical value c(alpha): Q(c) = alpha. c(0.001) = 1.9495.
inline double kolmogorov_critical(double alpha) {
  double lo = 0.2;
  double hi = 5.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct KsResult {
  double statistic = 0;
  double effective_n = 0;
  double p_value = 1;

  /// Largest statistic passing at level alpha.
  double critical(double alpha) const {
    const double root = std::sqrt(effective_n);
    return kolmogorov_critical(alpha) / (root + 0.12 + 0.11 / root);
  }
  bool passed(double alpha) const { return p_value > alpha; }
};

namespace detail {

inline KsResult ks_result(double d, double ne) {
  const double root = std::sqrt(ne);
  return {d, ne, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

}  // namespace detail

/// One-sample KS test of `sample` against the distribution function `cdf`.
template <class Cdf>
KsResult ks_one_sample(std::span<const double> sample, Cdf cdf) {
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return detail::ks_result(d, n);
}

/// Two-sample KS test.
inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return detail::ks_result(d, na * nb / (na + nb));
}

/// Sample mean and variance by Welford's recurrence.
struct Moments {
  std::size_t n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double standard_error() const { return std::sqrt(variance() / static_cast<double>(n)); }

  /// |mean - target| in standard errors.
  double mean_z(double target) const { return std::fabs(mean - target) / standard_error(); }
};

inline Moments summarize(std::span<const double> xs) {
  Moments m;
  for (const double x : xs) m.add(x);
  return m;
}

}  // namespace polyagamma
