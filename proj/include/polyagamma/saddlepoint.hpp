#pragma once

// Approximate J*(n,z) sampler: draws X from the saddlepoint approximation
// sp_n of the density of J*(n,z)/n and returns nX. Proposals come from a
// two-piece envelope (inverse Gaussian left of x_c, gamma right of x_c)
// obtained by bounding eta = phi - delta with tangent lines.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "polyagamma/base_samplers.hpp"
#include "polyagamma/devroye.hpp"
#include "polyagamma/error.hpp"
#include "polyagamma/jstar_density.hpp"
#include "polyagamma/rng.hpp"
#include "polyagamma/special_functions.hpp"

namespace polyagamma {

namespace detail {

inline double shifted_dual(double s, double z) {
  const double u = s - 0.5 * z * z;
  require(u < pi_sq / 8, "cgf: s - z^2/2 must be below pi^2/8");
  return u;
}

}  // namespace detail

/// Cumulant generating function of J*(1,z): log cosh z - log cos sqrt(2u),
/// u = s - z^2/2.
inline double cgf(double s, double z) {
  const double u = detail::shifted_dual(s, z);
  const double base = u > 0 ? -std::log(std::cos(std::sqrt(2 * u)))
                            : (u < 0 ? -log_cosh(std::sqrt(-2 * u)) : 0.0);
  return log_cosh(z) + base;
}

/// K'(s) = utan(2u).
inline double cgf_p1(double s, double z) { return utan(2 * detail::shifted_dual(s, z)); }

/// K''(s) = 2 utan'(2u).
inline double cgf_p2(double s, double z) { return 2 * utan_prime(2 * detail::shifted_dual(s, z)); }

/// Saddle point of K'(s) = x in its three coordinates.
struct CgfPoint {
  double x;
  double s;
  double u;
};

/// Solves K'(s) = x, i.e. utan(2u) = x with u = s - z^2/2.
inline CgfPoint solve_saddle(double x, double z) {
  detail::require(x > 0 && std::isfinite(x), "solve_saddle: x must be positive");
  const double u = 0.5 * utan_inverse(x);
  if (!(std::fabs(utan(2 * u) - x) <= 1e-10 * std::fmax(1.0, x))) {
    throw convergence_error("solve_saddle: residual above tolerance");
  }
  return {x, u + 0.5 * z * z, u};
}

/// Convex dual phi(x) = min_s K(s) - s x, evaluated at the saddle point.
inline double phi(double x, double z) {
  const CgfPoint p = solve_saddle(x, z);
  return cgf(p.s, z) - p.s * x;
}

inline double delta(double x, double x_c) {
  detail::require(x > 0 && x_c > 0, "delta: arguments must be positive");
  return x <= x_c ? 0.5 * (1 / x_c - 1 / x) : std::log(x / x_c);
}

inline double delta_prime(double x, double x_c) {
  return x <= x_c ? 0.5 / (x * x) : 1 / x;
}

inline double eta(double x, double z, double x_c) { return phi(x, z) - delta(x, x_c); }

/// Mode of phi, K'(0) = tanh(z)/z.
inline double saddle_mode(double z) { return jstar_mean(JStarParams(1.0, z)); }

/// log sp_n(x) = log sqrt(n/2pi) - log K''(s)/2 + n phi(x).
inline double log_sp_density(double x, double n, double z) {
  detail::require(n > 0, "sp_density: n must be positive");
  const CgfPoint p = solve_saddle(x, z);
  const double kpp = cgf_p2(p.s, z);
  return 0.5 * std::log(n) - log_sqrt_two_pi - 0.5 * std::log(kpp) +
         n * (cgf(p.s, z) - p.s * x);
}

/// Saddlepoint approximation to the density of J*(n,z)/n.
inline double sp_density(double x, double n, double z) { return std::exp(log_sp_density(x, n, z)); }

struct SaddleEnvelope {
  double n = 0;
  double z = 0;
  double m = 0;
  double x_l = 0;
  double x_c = 0;
  double x_r = 0;
  double slope_l = 0;
  double intercept_l = 0;
  double slope_r = 0;
  double intercept_r = 0;
  double rho_l = 0;
  double rho_r = 0;
  double alpha_l = 0;
  double alpha_r = 0;
  double log_kappa_l = 0;
  double log_kappa_r = 0;
  double left_mu = 0;
  // log of kappa times the retained proposal mass on each side
  double log_weight_l = 0;
  double log_weight_r = 0;

  double left_probability() const { return 1 / (1 + std::exp(log_weight_r - log_weight_l)); }

  /// log k(x), the envelope that dominates sp_n.
  double log_kernel(double x) const {
    const double base = 0.5 * std::log(n) - log_sqrt_two_pi;
    if (x <= x_c) {
      return base - 0.5 * std::log(alpha_l) - 1.5 * std::log(x) + n * intercept_l +
             n / (2 * x_c) - 0.5 * n * rho_l * x - n / (2 * x);
    }
    return base - 0.5 * std::log(alpha_r) + (n - 1) * std::log(x) - n * std::log(x_c) +
           n * intercept_r - n * rho_r * x;
  }

  double line_l(double x) const { return intercept_l + slope_l * x; }
  double line_r(double x) const { return intercept_r + slope_r * x; }
};

inline constexpr double envelope_slack = 1e-9;
inline constexpr std::size_t envelope_spot_points = 64;

/// Envelope for sp_n at tilt z with x_l = m, x_c = 1.1 m, x_r = 1.2 m.
inline SaddleEnvelope build_envelope(double n, double z) {
  detail::require(n > 0 && std::isfinite(n), "build_envelope: n must be positive");
  detail::require(std::isfinite(z), "build_envelope: z must be finite");
  SaddleEnvelope env;
  env.n = n;
  env.z = std::fabs(z);
  env.m = saddle_mode(env.z);
  env.x_l = env.m;
  env.x_c = 1.1 * env.m;
  env.x_r = 1.2 * env.m;

  const CgfPoint pl = solve_saddle(env.x_l, env.z);
  env.slope_l = -pl.s - delta_prime(env.x_l, env.x_c);
  env.intercept_l = (cgf(pl.s, env.z) - pl.s * env.x_l) - delta(env.x_l, env.x_c) -
                    env.slope_l * env.x_l;
  env.rho_l = -2 * env.slope_l;

  const CgfPoint pr = solve_saddle(env.x_r, env.z);
  env.slope_r = -pr.s - delta_prime(env.x_r, env.x_c);
  env.intercept_r = (cgf(pr.s, env.z) - pr.s * env.x_r) - delta(env.x_r, env.x_c) -
                    env.slope_r * env.x_r;
  env.rho_r = -env.slope_r;
  if (!(env.rho_l > 0 && env.rho_r > 0)) {
    throw domination_error("build_envelope: tangent slopes are not negative");
  }

  const CgfPoint pc = solve_saddle(env.x_c, env.z);
  const double kpp_c = cgf_p2(pc.s, env.z);
  env.alpha_l = kpp_c / (env.x_c * env.x_c * env.x_c);
  env.alpha_r = kpp_c / (env.x_c * env.x_c);

  env.left_mu = 1 / std::sqrt(env.rho_l);
  env.log_kappa_l = -0.5 * std::log(env.alpha_l) + n / (2 * env.x_c) + n * env.intercept_l -
                    n * std::sqrt(env.rho_l);
  const double rate = n * env.rho_r;
  env.log_kappa_r = 0.5 * (std::log(n) - std::log(2 * pi * env.alpha_r)) + n * env.intercept_r -
                    n * std::log(env.x_c) + log_gamma_fn(n) - n * std::log(rate);
  env.log_weight_l = env.log_kappa_l + log_inverse_gaussian_cdf(env.x_c, env.left_mu, n);
  env.log_weight_r = env.log_kappa_r + log_upper_gamma_reg(n, rate * env.x_c);

  const auto grid = log_spaced_grid(env.m / 20, 20 * env.m, envelope_spot_points);
  for (const double x : grid) {
    if (log_sp_density(x, n, env.z) > env.log_kernel(x) + std::log1p(envelope_slack)) {
      throw domination_error("build_envelope: envelope fails to dominate sp_n");
    }
  }
  return env;
}

/// Saddlepoint sampler for fixed (n, z); the envelope is built once.
class SaddlepointSampler {
 public:
  SaddlepointSampler(double n, double z)
      : env_(build_envelope(n, z)),
        left_(env_.left_mu, n, env_.x_c),
        right_(n, n * env_.rho_r, env_.x_c),
        left_prob_(env_.left_probability()) {}

  const SaddleEnvelope& envelope() const { return env_; }
  double n() const { return env_.n; }
  double z() const { return env_.z; }

  /// One draw of X ~ sp_n (approximately J*(n,z)/n), unscaled.
  template <UniformSource R>
  double draw_mean(R& rng, SamplerStats* stats = nullptr) const {
    for (std::int64_t round = 0; round < max_rejections; ++round) {
      const bool left = rng.uniform() < left_prob_;
      const double x = left ? left_(rng) : right_(rng);
      if (stats) {
        ++stats->proposals;
        if (left) ++stats->left_proposals;
      }
      if (!(x > 1e-100 && std::isfinite(x))) continue;
      const double log_k = env_.log_kernel(x);
      const double log_sp = log_sp_density(x, env_.n, env_.z);
      if (log_sp > log_k + std::log1p(envelope_slack)) {
        throw domination_error("SaddlepointSampler: envelope fails to dominate sp_n");
      }
      if (std::log(rng.uniform()) + log_k <= log_sp) {
        if (stats) ++stats->accepted;
        return x;
      }
    }
    throw iteration_cap_error("SaddlepointSampler: proposal cap exceeded");
  }

  /// Approximate J*(n,z) draw.
  template <UniformSource R>
  double operator()(R& rng, SamplerStats* stats = nullptr) const {
    return env_.n * draw_mean(rng, stats);
  }

 private:
  SaddleEnvelope env_;
  TruncatedInverseGaussian left_;
  TruncatedGamma right_;
  double left_prob_;
};

template <UniformSource R>
double sample_saddle(double n, double z, R& rng) {
  return SaddlepointSampler(n, z)(rng);
}

/// Second differences of eta on uniform grids either side of x_c.
struct ConcavityReport {
  double max_second_diff_left = -std::numeric_limits<double>::infinity();
  double max_second_diff_right = -std::numeric_limits<double>::infinity();
  bool passed = false;
};

inline ConcavityReport check_eta_concavity(double z, std::size_t points = 500,
                                           double tol = 1e-9) {
  const double m = saddle_mode(z);
  const double x_c = 1.1 * m;
  ConcavityReport report;
  auto scan = [&](double lo, double hi) {
    double worst = -std::numeric_limits<double>::infinity();
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::vector<double> values(points);
    for (std::size_t i = 0; i < points; ++i) {
      values[i] = eta(lo + step * static_cast<double>(i), z, x_c);
    }
    for (std::size_t i = 1; i + 1 < points; ++i) {
      worst = std::fmax(worst, values[i + 1] - 2 * values[i] + values[i - 1]);
    }
    return worst;
  };
  report.max_second_diff_left = scan(m / 20, x_c);
  report.max_second_diff_right = scan(x_c, 20 * m);
  report.passed = report.max_second_diff_left <= tol && report.max_second_diff_right <= tol;
  return report;
}

/// Monotonicity of K''/x^2 (increasing) and K''/x^3 (decreasing) along a grid,
/// and the resulting alpha bounds on each side of x_c.
struct CurvatureReport {
  bool ratio2_increasing = true;
  bool ratio3_decreasing = true;
  double min_ratio3_left = std::numeric_limits<double>::infinity();
  double max_ratio3_left = 0;
  double min_ratio2_right = std::numeric_limits<double>::infinity();
  double max_ratio2_right = 0;
  double alpha_l = 0;
  double alpha_r = 0;

  bool alpha_bounds_hold() const {
    constexpr double tol = 1e-12;
    return min_ratio3_left >= alpha_l * (1 - tol) && max_ratio3_left <= 1 + tol &&
           min_ratio2_right >= alpha_r * (1 - tol) && max_ratio2_right <= 1 + tol;
  }
  bool passed() const { return ratio2_increasing && ratio3_decreasing && alpha_bounds_hold(); }
};

inline CurvatureReport check_curvature_ratios(double z, std::size_t points = 2000) {
  const double m = saddle_mode(z);
  const double x_c = 1.1 * m;
  CurvatureReport report;
  const double kpp_c = cgf_p2(solve_saddle(x_c, z).s, z);
  report.alpha_l = kpp_c / (x_c * x_c * x_c);
  report.alpha_r = kpp_c / (x_c * x_c);
  constexpr double flat = 1e-12;
  double prev2 = 0;
  double prev3 = 0;
  const auto grid = log_spaced_grid(m / 20, 20 * m, points);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double kpp = cgf_p2(solve_saddle(x, z).s, z);
    const double r2 = kpp / (x * x);
    const double r3 = r2 / x;
    if (i > 0) {
      if (r2 < prev2 * (1 - flat)) report.ratio2_increasing = false;
      if (r3 > prev3 * (1 + flat)) report.ratio3_decreasing = false;
    }
    prev2 = r2;
    prev3 = r3;
    if (x <= x_c) {
      report.min_ratio3_left = std::fmin(report.min_ratio3_left, r3);
      report.max_ratio3_left = std::fmax(report.max_ratio3_left, r3);
    }
    if (x >= x_c) {
      report.min_ratio2_right = std::fmin(report.min_ratio2_right, r2);
      report.max_ratio2_right = std::fmax(report.max_ratio2_right, r2);
    }
  }
  return report;
}

}  // namespace polyagamma
