#pragma once

// Elementary variate generators used as building blocks by the J* samplers.
// Every function draws only through a UniformSource, so (seed, parameters)
// fully determines the output sequence.

#include <cmath>
#include <cstdint>
#include <limits>

#include "polyagamma/error.hpp"
#include "polyagamma/rng.hpp"
#include "polyagamma/special_functions.hpp"

namespace polyagamma {

/// Proposal cap shared by every rejection loop in the library.
inline constexpr std::int64_t max_rejections = 1'000'000;

/// One-sided truncation: the support is (0, bound) or (bound, inf).
struct TruncationSide {
  enum class Side { below, above };

  double bound;
  Side side;

  bool contains(double x) const {
    return side == Side::below ? (x > 0 && x < bound) : x > bound;
  }
};

template <UniformSource R>
double sample_uniform(R& rng) {
  return rng.uniform();
}

template <UniformSource R>
double sample_exponential(R& rng) {
  return -std::log(rng.uniform());
}

/// Standard normal by the Box-Muller transform (one variate per call).
template <UniformSource R>
double sample_normal(R& rng) {
  const double radius = std::sqrt(-2.0 * std::log(rng.uniform()));
  return radius * std::cos(2.0 * pi * rng.uniform());
}

/// Gamma(shape, rate). Marsaglia-Tsang for shape >= 1; smaller shapes are
/// boosted through shape + 1 and scaled by U^(1/shape).
template <UniformSource R>
double sample_gamma(double shape, double rate, R& rng) {
  detail::require(shape > 0 && rate > 0, "sample_gamma: shape and rate must be positive");
  if (shape < 1) {
    const double boosted = sample_gamma(shape + 1.0, 1.0, rng);
    return boosted * std::exp(std::log(rng.uniform()) / shape) / rate;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    const double x = sample_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0) continue;
    v = v * v * v;
    const double u = rng.uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v / rate;
  }
}

/// IG(mu, lambda) by the Michael-Schucany-Haas transform with root selection.
template <UniformSource R>
double sample_inverse_gaussian(double mu, double lambda, R& rng) {
  detail::require(mu > 0 && lambda > 0 && std::isfinite(mu),
                  "sample_inverse_gaussian: parameters must be positive");
  const double n = sample_normal(rng);
  const double w = mu * n * n / (2 * lambda);
  // smaller root mu(1 + w - sqrt(w(2+w))), written without cancellation
  const double x = mu / (1 + w + std::sqrt(w * (2 + w)));
  return rng.uniform() <= mu / (mu + x) ? x : mu * mu / x;
}

/// Exp(rate) conditioned on exceeding `left`, i.e. left + Exp(rate).
template <UniformSource R>
double sample_truncated_exponential(double rate, double left, R& rng) {
  detail::require(rate > 0 && left >= 0, "sample_truncated_exponential: need rate > 0");
  return left + sample_exponential(rng) / rate;
}

/// IG(mu, lambda) restricted to (0, right); mu = +inf gives the zero-drift law
/// sqrt(lambda/(2 pi x^3)) exp(-lambda/(2x)).
///
/// Two exact regimes, picked at construction by comparing their acceptance
/// probabilities:
///  - drift rejection: draw the zero-drift law on (0, right) as lambda/N^2 with
///    |N| > sqrt(lambda/right), accept with probability exp(-lambda x/(2 mu^2));
///  - plain rejection: draw IG(mu, lambda) until it lands below `right`.
class TruncatedInverseGaussian {
 public:
  TruncatedInverseGaussian(double mu, double lambda, double right)
      : mu_(mu), lambda_(lambda), right_(right) {
    detail::require(mu > 0 && lambda > 0 && right > 0 && std::isfinite(right),
                    "truncated inverse Gaussian: parameters must be positive");
    normal_bound_ = std::sqrt(lambda / right);
    if (std::isinf(mu)) {
      use_drift_rejection_ = true;
      log_acceptance_ = 0.0;
      return;
    }
    const double log_plain = log_inverse_gaussian_cdf(right, mu, lambda);
    const double log_levy_mass = log_two + log_normal_cdf(-normal_bound_);
    const double log_drift = log_plain - lambda / mu - log_levy_mass;
    use_drift_rejection_ = log_drift >= log_plain;
    log_acceptance_ = use_drift_rejection_ ? log_drift : log_plain;
  }

  double mu() const { return mu_; }
  double lambda() const { return lambda_; }
  double right() const { return right_; }
  bool uses_drift_rejection() const { return use_drift_rejection_; }
  double log_acceptance() const { return log_acceptance_; }
  TruncationSide support() const { return {right_, TruncationSide::Side::below}; }

  template <UniformSource R>
  double operator()(R& rng) const {
    for (std::int64_t i = 0; i < max_rejections; ++i) {
      if (use_drift_rejection_) {
        const double n = abs_normal_above(rng);
        const double x = lambda_ / (n * n);
        if (!(x < right_) || x <= 0) continue;
        if (std::isinf(mu_)) return x;
        if (rng.uniform() <= std::exp(-lambda_ * x / (2 * mu_ * mu_))) return x;
      } else {
        const double x = sample_inverse_gaussian(mu_, lambda_, rng);
        if (x < right_ && x > 0) return x;
      }
    }
    throw iteration_cap_error("truncated inverse Gaussian: rejection cap exceeded");
  }

 private:
  // |N| conditioned on |N| > a.
  template <UniformSource R>
  double abs_normal_above(R& rng) const {
    const double a = normal_bound_;
    if (a < 1) {
      while (true) {
        const double n = std::fabs(sample_normal(rng));
        if (n > a) return n;
      }
    }
    // exponential proposal a + E/a for the normal tail
    while (true) {
      const double e1 = sample_exponential(rng);
      const double e2 = sample_exponential(rng);
      if (e1 * e1 <= 2 * a * a * e2) return a + e1 / a;
    }
  }

  double mu_;
  double lambda_;
  double right_;
  double normal_bound_ = 0;
  bool use_drift_rejection_ = false;
  double log_acceptance_ = 0;
};

template <UniformSource R>
double sample_truncated_inverse_gaussian(double mu, double lambda, double right, R& rng) {
  return TruncatedInverseGaussian(mu, lambda, right)(rng);
}

/// Gamma(shape, rate) conditioned on exceeding `left`. When the retained mass
/// is large, untruncated draws are filtered; otherwise a shifted exponential
/// proposal with the rate maximizing acceptance is used. Shape 1 reduces to an
/// exact shifted exponential.
class TruncatedGamma {
 public:
  TruncatedGamma(double shape, double rate, double left)
      : shape_(shape), rate_(rate), left_(left) {
    detail::require(shape > 0 && rate > 0 && left > 0 && std::isfinite(left),
                    "truncated gamma: parameters must be positive");
    log_mass_ = log_upper_gamma_reg(shape, rate * left);
    filter_ = shape != 1.0 && log_mass_ >= std::log(0.3);
    if (shape > 1) {
      const double bt = rate * left - shape;
      proposal_rate_ = (bt + std::sqrt(bt * bt + 4 * rate * left)) / (2 * left);
      const double slack = rate - proposal_rate_;
      peak_ = slack > 0 ? std::fmax(left, (shape - 1) / slack) : left;
    } else {
      proposal_rate_ = rate;
      peak_ = left;
    }
    log_peak_ = log_weight(peak_);
  }

  double shape() const { return shape_; }
  double rate() const { return rate_; }
  double left() const { return left_; }
  double log_mass() const { return log_mass_; }
  TruncationSide support() const { return {left_, TruncationSide::Side::above}; }

  template <UniformSource R>
  double operator()(R& rng) const {
    for (std::int64_t i = 0; i < max_rejections; ++i) {
      if (filter_) {
        const double x = sample_gamma(shape_, rate_, rng);
        if (x > left_) return x;
      } else {
        const double x = left_ + sample_exponential(rng) / proposal_rate_;
        if (shape_ == 1.0) return x;
        if (std::log(rng.uniform()) <= log_weight(x) - log_peak_) return x;
      }
    }
    throw iteration_cap_error("truncated gamma: rejection cap exceeded");
  }

 private:
  double log_weight(double x) const {
    return (shape_ - 1) * std::log(x) - (rate_ - proposal_rate_) * x;
  }

  double shape_;
  double rate_;
  double left_;
  double log_mass_ = 0;
  bool filter_ = false;
  double proposal_rate_ = 0;
  double peak_ = 0;
  double log_peak_ = 0;
};

template <UniformSource R>
double sample_truncated_gamma(double shape, double rate, double left, R& rng) {
  return TruncatedGamma(shape, rate, left)(rng);
}

}  // namespace polyagamma
