#pragma once

// Scalar special functions shared by the samplers. Everything here is a pure
// function of its arguments; relative accuracy target is 1e-12.

#include <cmath>
#include <limits>
#include <numbers>

#include "polyagamma/error.hpp"

namespace polyagamma {

inline constexpr double pi = std::numbers::pi;
inline constexpr double pi_sq = pi * pi;
inline constexpr double half_pi = pi / 2;
inline constexpr double log_two = std::numbers::ln2;
inline constexpr double log_sqrt_two_pi = 0.91893853320467274178032973640562;

namespace detail {

inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

// Taylor coefficients of tan(sqrt(v))/sqrt(v) in v; the same series is the
// continuation tanh(sqrt(-v))/sqrt(-v) for v < 0.
inline constexpr double utan_series[] = {
    1.0,
    1.0 / 3.0,
    2.0 / 15.0,
    17.0 / 315.0,
    62.0 / 2835.0,
    1382.0 / 155925.0,
    21844.0 / 6081075.0,
    929569.0 / 638512875.0,
};

// Beyond |v| < 1e-2 the closed forms lose at most two digits.
inline constexpr double utan_series_radius = 1e-2;

inline double utan_taylor(double v) {
  double acc = 0.0;
  for (int k = 7; k >= 0; --k) acc = acc * v + utan_series[k];
  return acc;
}

inline double utan_prime_taylor(double v) {
  double acc = 0.0;
  for (int k = 7; k >= 1; --k) acc = acc * v + k * utan_series[k];
  return acc;
}

}  // namespace detail

/// Analytic continuation of tan(sqrt(s))/sqrt(s): tanh(sqrt(-s))/sqrt(-s) for
/// s < 0 and 1 at s = 0. Strictly increasing on (-inf, pi^2/4).
inline double utan(double s) {
  detail::require(s < pi_sq / 4, "utan: argument must be below pi^2/4");
  if (std::fabs(s) < 1e-6) return 1.0 + s / 3.0 + 2.0 * s * s / 15.0;
  if (s > 0) {
    const double y = std::sqrt(s);
    return std::tan(y) / y;
  }
  const double y = std::sqrt(-s);
  return std::tanh(y) / y;
}

/// d/ds utan(s).
inline double utan_prime(double s) {
  detail::require(s < pi_sq / 4, "utan_prime: argument must be below pi^2/4");
  if (std::fabs(s) < detail::utan_series_radius) return detail::utan_prime_taylor(s);
  if (s > 0) {
    const double y = std::sqrt(s);
    const double c = std::cos(y);
    return (y / (c * c) - std::tan(y)) / (2 * y * y * y);
  }
  const double y = std::sqrt(-s);
  const double sech = 1.0 / std::cosh(y);
  return (std::tanh(y) - y * sech * sech) / (2 * y * y * y);
}

namespace detail {

// Root of a monotone f on (lo, hi) by Newton steps, bisecting whenever a step
// leaves the current bracket.
template <class F, class D>
double safeguarded_newton(F f, D df, double lo, double hi, double y, bool increasing,
                          double ftol) {
  for (int i = 0; i < 200; ++i) {
    const double fy = f(y);
    if (std::fabs(fy) <= ftol) return y;
    if ((fy < 0) == increasing) {
      lo = y;
    } else {
      hi = y;
    }
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) return y;
    double next = y - fy / df(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    y = next;
  }
  throw convergence_error("utan_inverse: root search did not converge");
}

}  // namespace detail

/// The s with utan(s) = x, for x > 0. Works in y = sqrt(|s|): tanh(y)/y = x
/// for x < 1 and tan(y)/y = x for x > 1.
inline double utan_inverse(double x) {
  detail::require(x > 0 && std::isfinite(x), "utan_inverse: x must be positive");
  if (x == 1.0) return 0.0;
  const double ftol = 4 * std::numeric_limits<double>::epsilon() * x;
  if (x < 1) {
    auto f = [x](double y) { return std::tanh(y) / y - x; };
    auto df = [](double y) {
      const double sech = 1 / std::cosh(y);
      return (y * sech * sech - std::tanh(y)) / (y * y);
    };
    const double hi = 1 / x;
    double y0 = x > 0.5 ? std::sqrt(3 * (1 - x)) : hi;
    if (!(y0 > 0 && y0 < hi)) y0 = 0.5 * hi;
    const double y = detail::safeguarded_newton(f, df, 0.0, hi, y0, false, ftol);
    return -y * y;
  }
  auto f = [x](double y) { return std::tan(y) / y - x; };
  auto df = [](double y) {
    const double c = std::cos(y);
    return (y / (c * c) - std::tan(y)) / (y * y);
  };
  double y0 = x < 1.5 ? std::sqrt(3 * (x - 1)) : half_pi - 2 / (pi * x);
  if (!(y0 > 0 && y0 < half_pi)) y0 = 0.5 * half_pi;
  const double y = detail::safeguarded_newton(f, df, 0.0, half_pi, y0, true, ftol);
  return y * y;
}

/// log(cosh(z)) without overflow.
inline double log_cosh(double z) {
  const double a = std::fabs(z);
  return a + std::log1p(std::exp(-2 * a)) - log_two;
}

/// log Gamma(x) for x > 0.
inline double log_gamma_fn(double x) {
  detail::require(x > 0, "log_gamma_fn: x must be positive");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace detail {

inline constexpr int gamma_max_iterations = 100000;

// log of x^a e^{-x} / Gamma(a).
inline double gamma_prefactor_log(double a, double x) {
  return a * std::log(x) - x - log_gamma_fn(a);
}

// Lower regularized P(a,x) by its power series; use for x < a + 1.
inline double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < gamma_max_iterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) {
      return sum * std::exp(gamma_prefactor_log(a, x));
    }
  }
  throw convergence_error("incomplete gamma: series did not converge");
}

// log Q(a,x) by Lentz's continued fraction; use for x >= a + 1.
inline double log_upper_gamma_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < gamma_max_iterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) return gamma_prefactor_log(a, x) + std::log(h);
  }
  throw convergence_error("incomplete gamma: continued fraction did not converge");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a,x).
inline double lower_gamma_reg(double a, double x) {
  detail::require(a > 0 && x >= 0, "lower_gamma_reg: need a > 0, x >= 0");
  if (x == 0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1) return detail::lower_gamma_series(a, x);
  return -std::expm1(detail::log_upper_gamma_cf(a, x));
}

/// log Q(a,x); finite far into the tail where Q itself underflows.
inline double log_upper_gamma_reg(double a, double x) {
  detail::require(a > 0 && x >= 0, "upper_gamma_reg: need a > 0, x >= 0");
  if (x == 0) return 0.0;
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  if (x < a + 1) return std::log1p(-detail::lower_gamma_series(a, x));
  return detail::log_upper_gamma_cf(a, x);
}

/// Regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a).
inline double upper_gamma_reg(double a, double x) {
  detail::require(a > 0 && x >= 0, "upper_gamma_reg: need a > 0, x >= 0");
  if (x == 0) return 1.0;
  if (x < a + 1) return 1.0 - detail::lower_gamma_series(a, x);
  return std::exp(detail::log_upper_gamma_cf(a, x));
}

/// log of the standard normal distribution function.
inline double log_normal_cdf(double x) {
  if (x > 0) return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
  if (x > -37) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  // Mills-ratio asymptotic series; the next term is below 1e-14 here.
  const double r = 1.0 / (x * x);
  const double series = 1 - r * (1 - r * (3 - r * (15 - r * 105)));
  return -0.5 * x * x - std::log(-x) - log_sqrt_two_pi + std::log(series);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// log of the inverse Gaussian distribution function. `mu` may be +infinity,
/// giving the zero-drift (Levy) law with scale `lambda`.
inline double log_inverse_gaussian_cdf(double x, double mu, double lambda) {
  detail::require(x > 0 && mu > 0 && lambda > 0,
                  "inverse_gaussian_cdf: arguments must be positive");
  if (std::isinf(x)) return 0.0;
  const double root = std::sqrt(lambda / x);
  const double ratio = x / mu;
  const double first = log_normal_cdf(root * (ratio - 1));
  const double second = 2 * lambda / mu + log_normal_cdf(-root * (ratio + 1));
  return std::fmin(0.0, detail::log_add_exp(first, second));
}

/// Distribution function of IG(mu, lambda).
inline double inverse_gaussian_cdf(double x, double mu, double lambda) {
  return std::exp(log_inverse_gaussian_cdf(x, mu, lambda));
}

}  // namespace polyagamma
