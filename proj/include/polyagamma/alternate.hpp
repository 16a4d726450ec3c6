#pragma once

// J*(h,z) sampler for real h in [1, 4] built on the kernels l(x|h) and r(x|h)
// pasted at t(h), and a decomposition into equal pieces for h > 4.
//
// The accept/reject step uses the untilted kernel and untilted left partial
// sums; the tilt factor e^{-x z^2/2} is carried entirely by the proposal.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "polyagamma/base_samplers.hpp"
#include "polyagamma/devroye.hpp"
#include "polyagamma/error.hpp"
#include "polyagamma/jstar_density.hpp"
#include "polyagamma/rng.hpp"
#include "polyagamma/truncation_table.hpp"

namespace polyagamma {

/// Pass/fail of the kernel-domination check on a fixed coarse grid of h.
/// Computed once, on first use.
class DominationGuard {
 public:
  static constexpr int cells = 31;  // h = 1.0, 1.1, ..., 4.0
  static constexpr std::size_t grid_points = 200;

  static const DominationGuard& shared() {
    static const DominationGuard guard(domination_slack);
    return guard;
  }

  explicit DominationGuard(double slack) {
    const auto grid = log_spaced_grid(0.01, 20.0, grid_points);
    for (int i = 0; i < cells; ++i) {
      passed_[static_cast<std::size_t>(i)] = verify_domination(cell_h(i), grid, slack).passed;
    }
  }

  static double cell_h(int i) { return 1.0 + 0.1 * i; }

  /// True when the grid cells bracketing h both passed.
  bool approves(double h) const {
    if (!(h >= min_alternate_shape && h <= max_alternate_shape)) return false;
    const double pos = (h - 1.0) / 0.1;
    const int lo = static_cast<int>(std::floor(pos + 1e-9));
    const int hi = static_cast<int>(std::ceil(pos - 1e-9));
    return passed_[static_cast<std::size_t>(std::clamp(lo, 0, cells - 1))] &&
           passed_[static_cast<std::size_t>(std::clamp(hi, 0, cells - 1))];
  }

  bool cell_passed(int i) const { return passed_[static_cast<std::size_t>(i)]; }

 private:
  std::array<bool, cells> passed_{};
};

struct AlternateOptions {
  const TruncationTable* table = nullptr;     // default: the shared table
  const DominationGuard* guard = nullptr;     // default: the shared guard
};

/// Exact J*(h,z) sampler for h in [1, 4].
///
/// If the domination guard rejects h, integer shapes fall back to sums of
/// Devroye draws and other shapes raise domination_error.
class AlternateSampler {
 public:
  AlternateSampler(double h, double z, AlternateOptions options = {})
      : params_(h, z) {
    detail::require(h >= min_alternate_shape && h <= max_alternate_shape,
                    "AlternateSampler: h must lie in [1, 4]");
    const DominationGuard& guard = options.guard ? *options.guard : DominationGuard::shared();
    if (!guard.approves(h)) {
      if (h != std::floor(h)) {
        throw domination_error("AlternateSampler: kernel domination check failed for this h");
      }
      fallback_.emplace(params_.z);
      return;
    }
    const TruncationTable& table = options.table ? *options.table : default_trunc_table();
    trunc_ = table.lookup(h);
    weights_ = mixture_weights(trunc_, params_);
    left_prob_ = weights_.left_probability();
    const double mu = params_.z > 0 ? h / params_.z : std::numeric_limits<double>::infinity();
    left_.emplace(mu, h * h, trunc_);
    right_.emplace(h, right_rate(params_.z), trunc_);
    log_r_minus_ell_const_ = h * std::log(half_pi) - log_gamma_fn(h) - h * log_two -
                             std::log(h) + log_sqrt_two_pi;
  }

  const JStarParams& params() const { return params_; }
  double trunc() const { return trunc_; }
  const MixtureWeights& weights() const { return weights_; }
  double left_probability() const { return left_prob_; }
  bool uses_fallback() const { return fallback_.has_value(); }

  /// Probability that a proposal is accepted: cosh^{-h}(z)/(p + q).
  double acceptance_probability() const {
    return std::exp(-params_.h * log_cosh(params_.z) - weights_.log_total());
  }

  template <UniformSource R>
  double operator()(R& rng, SamplerStats* stats = nullptr) const {
    if (fallback_) {
      double sum = 0.0;
      for (int i = 0; i < static_cast<int>(params_.h); ++i) sum += (*fallback_)(rng, stats);
      return sum;
    }
    for (std::int64_t round = 0; round < max_rejections; ++round) {
      const bool left = rng.uniform() < left_prob_;
      const double x = left ? (*left_)(rng) : (*right_)(rng);
      if (stats) {
        ++stats->proposals;
        if (left) ++stats->left_proposals;
      }
      const double u = rng.uniform();
      if (accept(x, u, stats)) {
        if (stats) ++stats->accepted;
        return x;
      }
    }
    throw iteration_cap_error("AlternateSampler: proposal cap exceeded");
  }

 private:
  // k(x|h)/a_0(x|h): 1 left of the paste point, r/l to the right.
  double kernel_over_a0(double x) const {
    if (x < trunc_) return 1.0;
    const double h = params_.h;
    return std::exp(log_r_minus_ell_const_ + (h + 0.5) * std::log(x) - 0.125 * pi_sq * x +
                    h * h / (2 * x));
  }

  bool accept(double x, double u, SamplerStats* stats) const {
    const double h = params_.h;
    const double bound = kernel_over_a0(x);
    const double threshold = u * bound;
    double coef = 1.0;
    double sum = 1.0;
    double largest = 1.0;
    bool decreasing = false;
    for (std::int64_t n = 0; n < max_series_terms; ++n) {
      const double ratio = detail::coef_ratio_unchecked(n, x, h);
      decreasing = decreasing || ratio < 1;
      coef *= ratio;
      if (coef > largest) largest = coef;
      const std::int64_t index = n + 1;
      if (index % 2 == 1) {
        sum -= coef;
      } else {
        sum += coef;
      }
      if (!decreasing) continue;
      if (index % 2 == 1) {
        // Odd sums bound the density from below, so they may not exceed k.
        const double roundoff = 64 * std::numeric_limits<double>::epsilon() * largest;
        if (sum > bound * (1 + domination_slack) + roundoff) {
          throw domination_error("AlternateSampler: partial sum exceeded the bounding kernel");
        }
        if (threshold <= sum) return record(index, stats, true);
      } else if (threshold > sum) {
        return record(index, stats, false);
      }
    }
    throw convergence_error("AlternateSampler: partial sums did not settle");
  }

  static bool record(std::int64_t index, SamplerStats* stats, bool accepted) {
    if (stats) {
      stats->total_series_index += index;
      if (index > stats->max_series_index) stats->max_series_index = index;
    }
    return accepted;
  }

  JStarParams params_;
  double trunc_ = 0;
  MixtureWeights weights_{0, 0};
  double left_prob_ = 0;
  double log_r_minus_ell_const_ = 0;
  std::optional<TruncatedInverseGaussian> left_;
  std::optional<TruncatedGamma> right_;
  std::optional<DevroyeSampler> fallback_;
};

template <UniformSource R>
double sample_jstar_alt(double h, double z, R& rng) {
  return AlternateSampler(h, z)(rng);
}

/// Number of equal pieces, each of shape in (1, 4], used for J*(h,z).
inline int alternate_pieces(double h) {
  detail::require(h >= 1, "alternate_pieces: h must be at least 1");
  return h <= max_alternate_shape ? 1 : static_cast<int>(std::ceil(h / max_alternate_shape));
}

/// J*(h,z) for real h >= 1 as a sum of equal-shape alternate draws.
class JStarRealSampler {
 public:
  JStarRealSampler(double h, double z, AlternateOptions options = {})
      : pieces_(alternate_pieces(h)), piece_(h / pieces_, z, options) {}

  int pieces() const { return pieces_; }
  const AlternateSampler& piece() const { return piece_; }

  template <UniformSource R>
  double operator()(R& rng, SamplerStats* stats = nullptr) const {
    double sum = 0.0;
    for (int i = 0; i < pieces_; ++i) sum += piece_(rng, stats);
    return sum;
  }

 private:
  int pieces_;
  AlternateSampler piece_;
};

template <UniformSource R>
double sample_jstar_real(double h, double z, R& rng) {
  return JStarRealSampler(h, z)(rng);
}

}  // namespace polyagamma
