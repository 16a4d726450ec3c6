#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyagamma/rng.hpp"

namespace pgtest {

inline constexpr double ks_level = 0.001;
inline constexpr std::size_t mc_draws = 100000;

/// Adaptive Gauss-Kronrod integral on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

/// Integral on (0, inf) split at the given interior points.
inline double integrate_half_line(const std::function<double(double)>& f,
                                  const std::vector<double>& cuts) {
  double total = 0.0;
  double lo = 0.0;
  for (const double c : cuts) {
    total += integrate(f, lo, c);
    lo = c;
  }
  return total + integrate(f, lo, std::numeric_limits<double>::infinity());
}

/// Distribution function of an unnormalized density on [lo, hi], tabulated by
/// piecewise quadrature and interpolated linearly.
class QuadratureCdf {
 public:
  QuadratureCdf(const std::function<double(double)>& pdf, double lo, double hi,
                std::size_t cells = 4000)
      : lo_(lo), step_((hi - lo) / static_cast<double>(cells)), cum_(cells + 1, 0.0) {
    for (std::size_t i = 0; i < cells; ++i) {
      const double a = lo + step_ * static_cast<double>(i);
      // cells are narrow, so a single Kronrod panel is enough
      cum_[i + 1] = cum_[i] + boost::math::quadrature::gauss_kronrod<double, 31>::integrate(pdf, a, a + step_, 0);
    }
    mass_ = cum_.back();
    for (double& c : cum_) c /= mass_;
  }

  double operator()(double x) const {
    const double pos = (x - lo_) / step_;
    if (pos <= 0) return 0.0;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= cum_.size()) return 1.0;
    const double w = pos - static_cast<double>(i);
    return cum_[i] + w * (cum_[i + 1] - cum_[i]);
  }

  double mass() const { return mass_; }

 private:
  double lo_;
  double step_;
  std::vector<double> cum_;
  double mass_ = 0;
};

template <class F>
std::vector<double> draw(std::size_t n, std::uint64_t seed, F one) {
  polyagamma::RngStream rng(seed);
  std::vector<double> out(n);
  for (double& x : out) x = one(rng);
  return out;
}

}  // namespace pgtest
