#pragma once

// Exact J*(1,z) sampler: accept/reject from the a_0 envelope, with the
// alternating-series partial-sum test. Integer shapes are sums of J*(1,z).

#include <cmath>
#include <cstdint>
#include <limits>

#include "polyagamma/base_samplers.hpp"
#include "polyagamma/error.hpp"
#include "polyagamma/jstar_density.hpp"
#include "polyagamma/rng.hpp"

namespace polyagamma {

/// Counters filled by a sampler when the caller asks for them.
struct SamplerStats {
  std::int64_t proposals = 0;
  std::int64_t left_proposals = 0;
  std::int64_t accepted = 0;
  std::int64_t max_series_index = 0;
  std::int64_t total_series_index = 0;

  double acceptance_rate() const {
    return proposals > 0 ? static_cast<double>(accepted) / static_cast<double>(proposals) : 0.0;
  }
  double mean_series_index() const {
    return proposals > 0 ? static_cast<double>(total_series_index) / static_cast<double>(proposals)
                         : 0.0;
  }
};

inline constexpr double devroye_trunc = 2 / pi;
inline constexpr std::int64_t max_series_terms = 10000;

/// Two-component envelope for J*(1,z): truncated IG on (0, 2/pi) and a
/// shifted exponential on (2/pi, inf).
class DevroyeSampler {
 public:
  explicit DevroyeSampler(double z)
      : z_(std::fabs(z)),
        weights_(mixture_weights(devroye_trunc, JStarParams(1.0, z))),
        left_(z_ > 0 ? 1 / z_ : std::numeric_limits<double>::infinity(), 1.0, devroye_trunc),
        right_rate_(right_rate(z_)) {
    detail::require(std::isfinite(z), "DevroyeSampler: z must be finite");
    left_prob_ = weights_.left_probability();
  }

  double z() const { return z_; }
  double trunc() const { return devroye_trunc; }
  const MixtureWeights& weights() const { return weights_; }
  double left_probability() const { return left_prob_; }

  template <UniformSource R>
  double operator()(R& rng, SamplerStats* stats = nullptr) const {
    for (std::int64_t round = 0; round < max_rejections; ++round) {
      const bool left = rng.uniform() < left_prob_;
      const double x = left ? left_(rng) : sample_truncated_exponential(right_rate_, devroye_trunc, rng);
      if (stats) {
        ++stats->proposals;
        if (left) ++stats->left_proposals;
      }
      if (x < 1e-12) continue;
      const double u = rng.uniform();
      if (accept(x, u, stats)) {
        if (stats) ++stats->accepted;
        return x;
      }
    }
    throw iteration_cap_error("DevroyeSampler: proposal cap exceeded");
  }

 private:
  // Partial sums divided by a_0(x); the tilt factor cancels.
  static bool accept(double x, double u, SamplerStats* stats) {
    const double k = x <= devroye_trunc ? 2 / x : 0.5 * pi_sq * x;
    double s = 1.0;
    for (std::int64_t n = 1; n < max_series_terms; ++n) {
      const double nd = static_cast<double>(n);
      const double term = (2 * nd + 1) * std::exp(-k * nd * (nd + 1));
      int decision = -1;
      if (n % 2 == 1) {
        s -= term;
        if (u <= s) decision = 1;
      } else {
        s += term;
        if (u > s) decision = 0;
      }
      if (decision >= 0) {
        if (stats) {
          stats->total_series_index += n;
          if (n > stats->max_series_index) stats->max_series_index = n;
        }
        return decision == 1;
      }
    }
    throw convergence_error("DevroyeSampler: partial sums did not settle");
  }

  double z_;
  MixtureWeights weights_;
  TruncatedInverseGaussian left_;
  double right_rate_;
  double left_prob_ = 0;
};

template <UniformSource R>
double sample_jstar1(double z, R& rng) {
  return DevroyeSampler(z)(rng);
}

/// Sum of n independent J*(1,z) draws.
template <UniformSource R>
double sample_jstar_int(std::int64_t n, double z, R& rng) {
  detail::require(n >= 1, "sample_jstar_int: n must be a positive integer");
  const DevroyeSampler sampler(z);
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) sum += sampler(rng);
  return sum;
}

}  // namespace polyagamma
