#pragma once

// Exact density machinery for the J*(h,z) family: alternating-series
// coefficients and partial sums, the inverse-Gaussian-type left kernel and
// gamma-type right kernel, their masses, the truncation-point solver, the
// gamma-convolution representation and closed-form moments.
//
// Masses p and q are computed without the common cosh^h(z) factor carried by
// the kernels; it cancels in p/(p+q) and in every acceptance ratio.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "polyagamma/error.hpp"
#include "polyagamma/rng.hpp"
#include "polyagamma/base_samplers.hpp"
#include "polyagamma/special_functions.hpp"

namespace polyagamma {

/// Shape h > 0 and tilt z of a J*(h,z) law. The density depends on z only
/// through z^2 and cosh(z), so the tilt is stored as |z|.
struct JStarParams {
  double h;
  double z;

  JStarParams(double shape, double tilt) : h(shape), z(std::fabs(tilt)) {
    detail::require(shape > 0 && std::isfinite(shape), "JStarParams: shape must be positive");
    detail::require(std::isfinite(tilt), "JStarParams: tilt must be finite");
  }
};

/// pi^2/2 (n + 1/2)^2
inline double c_index(std::int64_t n) {
  const double k = static_cast<double>(n) + 0.5;
  return 0.5 * pi_sq * k * k;
}

/// c_index(n) + z^2/2
inline double d_index(std::int64_t n, double z) { return c_index(n) + 0.5 * z * z; }

/// Rate of the right kernel, pi^2/8 + z^2/2.
inline double right_rate(double z) { return d_index(0, z); }

/// log cosh^h(z) e^{-x z^2/2}, the tilt factor shared by every coefficient.
inline double log_tilt(double x, const JStarParams& params) {
  return params.h * log_cosh(params.z) - 0.5 * x * params.z * params.z;
}

inline double log_coef_left(std::int64_t n, double x, const JStarParams& params) {
  detail::require(x > 0, "coef_left: x must be positive");
  const double h = params.h;
  const double nd = static_cast<double>(n);
  const double k = 2 * nd + h;
  return log_tilt(x, params) + h * log_two - log_gamma_fn(h) + log_gamma_fn(nd + h) -
         log_gamma_fn(nd + 1) + std::log(k) - 0.5 * std::log(2 * pi * x * x * x) -
         k * k / (2 * x);
}

/// n-th coefficient of the inverse-gamma-type alternating series, tilted.
inline double coef_left(std::int64_t n, double x, const JStarParams& params) {
  return std::exp(log_coef_left(n, x, params));
}

inline double log_coef_right_h1(std::int64_t n, double x, double z) {
  detail::require(x > 0, "coef_right_h1: x must be positive");
  const double k = static_cast<double>(n) + 0.5;
  return log_tilt(x, JStarParams(1.0, z)) + std::log(pi * k) - 0.5 * k * k * pi_sq * x;
}

/// n-th coefficient of the exponential-type series of J*(1,z).
inline double coef_right_h1(std::int64_t n, double x, double z) {
  return std::exp(log_coef_right_h1(n, x, z));
}

namespace detail {

inline double coef_ratio_unchecked(std::int64_t n, double x, double h) {
  const double nd = static_cast<double>(n);
  return (1 + (h - 1) / (nd + 1)) * (1 + 2 / (2 * nd + h)) * std::exp(-(2 / x) * (2 * nd + h + 1));
}

}  // namespace detail

/// a_{n+1}/a_n of the left series; independent of the tilt.
inline double coef_ratio(std::int64_t n, double x, double h) {
  detail::require(x > 0 && h >= 1, "coef_ratio: need x > 0 and h >= 1");
  return detail::coef_ratio_unchecked(n, x, h);
}

/// Running state of the left partial sums S_n = sum_{i<=n} (-1)^i a_i.
struct SeriesEvalState {
  double x;
  std::int64_t n;
  double sum;
  double coef;
  // Once set, every later coefficient is smaller than its predecessor.
  bool decreasing;
};

inline SeriesEvalState start_series(double x, const JStarParams& params) {
  const double a0 = coef_left(0, x, params);
  return {x, 0, a0, a0, false};
}

inline SeriesEvalState partial_sum_step(const SeriesEvalState& state, const JStarParams& params) {
  const double ratio = detail::coef_ratio_unchecked(state.n, state.x, params.h);
  SeriesEvalState next = state;
  next.n = state.n + 1;
  next.coef = state.coef * ratio;
  next.sum = (next.n % 2 == 1) ? state.sum - next.coef : state.sum + next.coef;
  next.decreasing = state.decreasing || ratio < 1;
  return next;
}

inline constexpr std::int64_t density_max_terms = 10000;
inline constexpr double density_rel_tol = 1e-13;

namespace detail {

// sum_n (-1)^n a_n/a_0 for the left series at z = 0.
struct LeftSeries {
  long double sum = 0;
  long double peak = 1;  // largest |term|, relative to a_0
  bool converged = false;
};

inline LeftSeries left_series_relative(double x, double h) {
  LeftSeries out;
  long double term = 1.0L;
  out.sum = 1.0L;
  bool decreasing = false;
  for (std::int64_t n = 0; n < density_max_terms; ++n) {
    const long double ratio = coef_ratio_unchecked(n, x, h);
    decreasing = decreasing || ratio < 1;
    term *= ratio;
    out.peak = std::fmax(out.peak, term);
    out.sum += (n % 2 == 0) ? -term : term;
    if (decreasing && (term == 0 || std::fabs(term) < density_rel_tol * std::fabs(out.sum))) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

// sum_n (-1)^n a_n^R/a_0^R for h = 1; a_n^R/a_0^R = (2n+1) e^{-pi^2 x n(n+1)/2}.
inline long double right_series_relative_h1(double x) {
  long double sum = 1.0L;
  for (std::int64_t n = 1; n < density_max_terms; ++n) {
    const double nd = static_cast<double>(n);
    const long double term = (2 * nd + 1) * std::exp(-0.5 * pi_sq * x * nd * (nd + 1));
    sum += (n % 2 == 1) ? -term : term;
    if (term < density_rel_tol * sum) return sum;
  }
  throw convergence_error("density: right series did not converge");
}

inline double log_of_positive(long double s) {
  return s > 0 ? static_cast<double>(std::log(s)) : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// log density from the inverse-gamma-type series alone.
inline double log_density_left_series(double x, const JStarParams& params) {
  detail::require(x > 0, "density: x must be positive");
  const detail::LeftSeries series = detail::left_series_relative(x, params.h);
  if (!series.converged) throw convergence_error("density: left series did not converge");
  return log_coef_left(0, x, params) + detail::log_of_positive(series.sum);
}

/// log density of J*(1,z) from the exponential-type series alone.
inline double log_density_right_series_h1(double x, double z) {
  detail::require(x > 0, "density: x must be positive");
  return log_coef_right_h1(0, x, z) + detail::log_of_positive(detail::right_series_relative_h1(x));
}

namespace detail {

inline constexpr int contour_nodes = 128;
inline constexpr int contour_product_terms = 24;

// log cosh(sqrt(2 lam)) on the branch continuous with the real values at
// lam > -c_0. The principal value is shifted by the multiple of 2 pi i that
// brings it nearest the argument of prod (1 + lam/c_n).
inline std::complex<double> log_cosh_sqrt2(std::complex<double> lam) {
  const std::complex<double> w = std::sqrt(2.0 * lam);
  const std::complex<double> principal = w + std::log(1.0 + std::exp(-2.0 * w)) - log_two;
  double arg = 0.0;
  for (int n = 0; n < contour_product_terms; ++n) arg += std::arg(1.0 + lam / c_index(n));
  arg += lam.imag() * 2 / (pi_sq * contour_product_terms);
  const double k = std::round((arg - principal.imag()) / (2 * pi));
  return principal + std::complex<double>(0.0, 2 * pi * k);
}

}  // namespace detail

/// log density of J*(h,z) by inverting the Laplace transform cosh^{-h}(sqrt(2 lam))
/// along a contour that crosses the real axis at the saddle point and bends
/// left around the singularities at -c_n; trapezoid rule in the contour angle.
/// Accurate where the alternating series cancels, i.e. far in the right tail.
inline double log_density_contour(double x, const JStarParams& params) {
  detail::require(x > 0 && std::isfinite(x), "density: x must be positive");
  const double h = params.h;
  const double s = utan_inverse(x / h);
  const double sigma = -0.5 * s;
  const double curvature = 2 * h * utan_prime(s);
  const double r = 2 / std::sqrt(curvature);
  const double log_peak = -h * detail::log_cosh_sqrt2({sigma, 0.0}).real() + sigma * x;
  double sum = 0.5 * r;
  for (int k = 1; k < detail::contour_nodes; ++k) {
    const double theta = pi * k / detail::contour_nodes;
    const double cot = std::cos(theta) / std::sin(theta);
    const std::complex<double> lam(sigma - r + r * theta * cot, r * theta);
    const std::complex<double> exponent = -h * detail::log_cosh_sqrt2(lam) + lam * x - log_peak;
    if (exponent.real() < -745) continue;
    const double sin_theta = std::sin(theta);
    const std::complex<double> dlam(r * (cot - theta / (sin_theta * sin_theta)), r);
    sum += (std::exp(exponent) * dlam).imag();
  }
  if (!(sum > 0)) throw numerical_error("density: contour inversion lost all precision");
  return log_tilt(x, params) + log_peak + std::log(sum / detail::contour_nodes);
}

inline constexpr long double density_cancellation_limit = 1e4L;

/// log density of J*(h,z). For h = 1 the two series are pasted at 2/pi, where
/// each is well conditioned. Otherwise the left series is used until its
/// terms cancel by more than density_cancellation_limit, then the contour
/// inversion takes over.
inline double log_density(double x, const JStarParams& params) {
  detail::require(x > 0, "density: x must be positive");
  if (params.h == 1.0 && x > 2 / pi) return log_density_right_series_h1(x, params.z);
  const detail::LeftSeries series = detail::left_series_relative(x, params.h);
  if (series.converged && series.sum > 0 && series.peak <= density_cancellation_limit * series.sum) {
    return log_coef_left(0, x, params) + detail::log_of_positive(series.sum);
  }
  return log_density_contour(x, params);
}

inline double density(double x, const JStarParams& params) {
  return std::exp(log_density(x, params));
}

/// Truncated gamma convolution sum_{n < n_terms} g_n/d_n with g_n ~ Ga(h,1).
template <UniformSource R>
double sample_gamma_sum(const JStarParams& params, std::int64_t n_terms, R& rng) {
  detail::require(n_terms >= 1, "sample_gamma_sum: need at least one term");
  double sum = 0.0;
  for (std::int64_t n = 0; n < n_terms; ++n) {
    sum += sample_gamma(params.h, 1.0, rng) / d_index(n, params.z);
  }
  return sum;
}

/// E[J*(h,z)] = h tanh(z)/z.
inline double jstar_mean(const JStarParams& params) {
  const double z = params.z;
  if (z < 1e-4) {
    const double z2 = z * z;
    return params.h * (1 - z2 / 3 + 2 * z2 * z2 / 15);
  }
  return params.h * std::tanh(z) / z;
}

/// Var[J*(h,z)] = h (tanh z - z sech^2 z)/z^3.
inline double jstar_var(const JStarParams& params) {
  const double z = params.z;
  if (z < 0.1) {
    static constexpr double series[] = {2.0 / 3,        -8.0 / 15,        34.0 / 105,
                                        -496.0 / 2835,  2764.0 / 31185,   -87376.0 / 2027025};
    const double z2 = z * z;
    double acc = 0.0;
    for (int k = 5; k >= 0; --k) acc = acc * z2 + series[k];
    return params.h * acc;
  }
  const double sech = 1.0 / std::cosh(z);
  return params.h * (std::tanh(z) - z * sech * sech) / (z * z * z);
}

inline double log_kernel_ell(double x, const JStarParams& params) {
  detail::require(x > 0, "kernel_ell: x must be positive");
  const double h = params.h;
  return log_tilt(x, params) + h * log_two + std::log(h) - log_sqrt_two_pi - 1.5 * std::log(x) -
         h * h / (2 * x);
}

inline double log_kernel_r(double x, const JStarParams& params) {
  detail::require(x > 0, "kernel_r: x must be positive");
  const double h = params.h;
  return h * log_cosh(params.z) + h * std::log(half_pi) + (h - 1) * std::log(x) -
         log_gamma_fn(h) - right_rate(params.z) * x;
}

/// Left bounding kernel: the leading left coefficient a_0^L(x|h,z).
inline double kernel_ell(double x, const JStarParams& params) {
  return std::exp(log_kernel_ell(x, params));
}

/// Right bounding kernel: the leading gamma term of the partial-fraction density.
inline double kernel_r(double x, const JStarParams& params) {
  return std::exp(log_kernel_r(x, params));
}

/// Masses of the left kernel on (0, trunc) and the right kernel on
/// (trunc, inf), both without the cosh^h(z) factor.
struct MixtureWeights {
  double log_p;
  double log_q;

  double p() const { return std::exp(log_p); }
  double q() const { return std::exp(log_q); }
  double left_probability() const { return 1.0 / (1.0 + std::exp(log_q - log_p)); }
  double log_total() const { return detail::log_add_exp(log_p, log_q); }
};

inline MixtureWeights mixture_weights(double trunc, const JStarParams& params) {
  detail::require(trunc > 0 && std::isfinite(trunc), "mixture_weights: trunc must be positive");
  const double h = params.h;
  const double z = params.z;
  const double log_p =
      z > 0 ? h * log_two - z * h + log_inverse_gaussian_cdf(trunc, h / z, h * h)
            : h * log_two + log_upper_gamma_reg(0.5, h * h / (2 * trunc));
  const double rate = right_rate(z);
  const double log_q = h * std::log(half_pi / rate) + log_upper_gamma_reg(h, rate * trunc);
  return {log_p, log_q};
}

inline constexpr double min_alternate_shape = 1.0;
inline constexpr double max_alternate_shape = 4.0;

/// Paste point t(h) where l(x|h) = r(x|h); it minimizes p + q and does not
/// depend on the tilt. log l - log r is strictly increasing in x for h >= 1.
inline double solve_trunc_point(double h) {
  detail::require(h >= min_alternate_shape && h <= max_alternate_shape,
                  "solve_trunc_point: h must lie in [1, 4]");
  const JStarParams params(h, 0.0);
  auto gap = [&](double x) { return log_kernel_ell(x, params) - log_kernel_r(x, params); };
  double lo = 0.05;
  double hi = 20.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) return 0.5 * (lo + hi);
  }
  throw convergence_error("solve_trunc_point: bisection did not converge");
}

/// Log-spaced grid of `count` points on [lo, hi].
inline std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count) {
  detail::require(lo > 0 && hi > lo && count >= 2, "log_spaced_grid: invalid range");
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

/// Ratios f/l and f/r over a grid, with monotonicity along increasing x.
struct DominationReport {
  double h = 0;
  double max_rho_left = 0;
  double max_rho_right = 0;
  bool rho_left_nonincreasing = true;
  bool rho_left_nondecreasing = true;
  bool rho_right_nonincreasing = true;
  bool rho_right_nondecreasing = true;
  bool passed = false;
};

inline constexpr double domination_slack = 1e-9;

inline DominationReport verify_domination(double h, std::span<const double> x_grid,
                                          double slack = domination_slack) {
  detail::require(h >= min_alternate_shape && h <= max_alternate_shape,
                  "verify_domination: h must lie in [1, 4]");
  const JStarParams params(h, 0.0);
  DominationReport report;
  report.h = h;
  constexpr double flat = 1e-12;
  double prev_left = 0;
  double prev_right = 0;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    const double log_f = log_density(x, params);
    const double rho_left = std::exp(log_f - log_kernel_ell(x, params));
    const double rho_right = std::exp(log_f - log_kernel_r(x, params));
    report.max_rho_left = std::fmax(report.max_rho_left, rho_left);
    report.max_rho_right = std::fmax(report.max_rho_right, rho_right);
    if (i > 0) {
      if (rho_left > prev_left * (1 + flat)) report.rho_left_nonincreasing = false;
      if (rho_left < prev_left * (1 - flat)) report.rho_left_nondecreasing = false;
      if (rho_right > prev_right * (1 + flat)) report.rho_right_nonincreasing = false;
      if (rho_right < prev_right * (1 - flat)) report.rho_right_nondecreasing = false;
    }
    prev_left = rho_left;
    prev_right = rho_right;
  }
  report.passed = report.max_rho_left <= 1 + slack && report.max_rho_right <= 1 + slack;
  return report;
}

}  // namespace polyagamma
