#pragma once

// Public PG(b,z) interface. PG(b,z) = J*(b, z/2)/4; each method draws the
// J* variate and rescales.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "polyagamma/alternate.hpp"
#include "polyagamma/base_samplers.hpp"
#include "polyagamma/devroye.hpp"
#include "polyagamma/error.hpp"
#include "polyagamma/jstar_density.hpp"
#include "polyagamma/rng.hpp"
#include "polyagamma/saddlepoint.hpp"

namespace polyagamma {

/// Shape b > 0 and tilt z; the sign of z is irrelevant and |z| is stored.
struct PgParams {
  double b;
  double z;

  PgParams(double shape, double tilt) : b(shape), z(std::fabs(tilt)) {
    detail::require(shape > 0 && std::isfinite(shape), "PgParams: b must be positive");
    detail::require(std::isfinite(tilt), "PgParams: z must be finite");
  }

  JStarParams jstar() const { return {b, z / 2}; }
};

enum class Method { automatic, devroye, alternate, saddlepoint, normal, gamma_sum };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::devroye: return "devroye";
    case Method::alternate: return "alternate";
    case Method::saddlepoint: return "saddlepoint";
    case Method::normal: return "normal";
    case Method::gamma_sum: return "gamma-sum";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::automatic, Method::devroye, Method::alternate, Method::saddlepoint,
                   Method::normal, Method::gamma_sum}) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

/// Shape cut points of the hybrid rule.
struct Thresholds {
  double devroye_max = 2;
  double alternate_max = 13;
  double saddle_max = 170;

  void validate() const {
    detail::require(devroye_max >= 1 && devroye_max < alternate_max && alternate_max < saddle_max,
                    "Thresholds: need 1 <= devroye_max < alternate_max < saddle_max");
  }
};

inline constexpr std::int64_t gamma_sum_terms = 200;

inline bool is_integer_shape(double b) { return b >= 1 && b == std::floor(b); }

/// Hybrid rule: Devroye sums for small integer b, the alternate sampler below
/// alternate_max, the saddlepoint sampler up to saddle_max and a moment-matched
/// normal beyond. Shapes below 1 get the truncated gamma sum.
inline Method choose_method(double b, const Thresholds& t = {}) {
  t.validate();
  detail::require(b > 0, "choose_method: b must be positive");
  if (b < 1) return Method::gamma_sum;
  if (is_integer_shape(b) && b <= t.devroye_max) return Method::devroye;
  if (b < t.alternate_max) return Method::alternate;
  if (b <= t.saddle_max) return Method::saddlepoint;
  return Method::normal;
}

inline bool method_supports(Method m, double b) {
  switch (m) {
    case Method::automatic: return b > 0;
    case Method::devroye: return is_integer_shape(b);
    case Method::alternate: return b >= 1;
    case Method::saddlepoint: return b >= 1;
    case Method::normal: return b > 0;
    case Method::gamma_sum: return b > 0;
  }
  return false;
}

/// Whether draws of method m are exact J* draws rescaled.
inline bool method_is_exact(Method m) {
  return m == Method::devroye || m == Method::alternate;
}

inline double pg_mean(const PgParams& params) { return jstar_mean(params.jstar()) / 4; }
inline double pg_var(const PgParams& params) { return jstar_var(params.jstar()) / 16; }

/// Moment-matched normal, redrawn until positive.
template <UniformSource R>
double sample_pg_normal(const PgParams& params, R& rng) {
  const double mean = pg_mean(params);
  const double sd = std::sqrt(pg_var(params));
  for (std::int64_t i = 0; i < max_rejections; ++i) {
    const double x = mean + sd * sample_normal(rng);
    if (x > 0) return x;
  }
  throw iteration_cap_error("sample_pg_normal: no positive draw");
}

struct PgDraw {
  double value;
  Method method;
  bool approximate;
};

/// PG(b,z) sampler with the method resolved and its setup done once.
class PgSampler {
 public:
  explicit PgSampler(PgParams params, Method method = Method::automatic,
                     const Thresholds& thresholds = {}, AlternateOptions options = {})
      : params_(params) {
    method_ = method == Method::automatic ? choose_method(params.b, thresholds) : method;
    if (!method_supports(method_, params.b)) {
      throw domain_error(std::string("PgSampler: method ") + method_name(method_) +
                         " does not support b = " + std::to_string(params.b));
    }
    const double tilt = params.z / 2;
    switch (method_) {
      case Method::devroye:
        impl_.emplace<DevroyeSampler>(tilt);
        break;
      case Method::alternate:
        impl_.emplace<JStarRealSampler>(params.b, tilt, options);
        break;
      case Method::saddlepoint:
        impl_.emplace<SaddlepointSampler>(params.b, tilt);
        break;
      default:
        break;
    }
  }

  const PgParams& params() const { return params_; }
  Method method() const { return method_; }
  bool approximate() const { return !method_is_exact(method_); }

  template <UniformSource R>
  double operator()(R& rng, SamplerStats* stats = nullptr) const {
    switch (method_) {
      case Method::devroye: {
        const auto& s = std::get<DevroyeSampler>(impl_);
        double sum = 0.0;
        for (int i = 0; i < static_cast<int>(params_.b); ++i) sum += s(rng, stats);
        return sum / 4;
      }
      case Method::alternate:
        return std::get<JStarRealSampler>(impl_)(rng, stats) / 4;
      case Method::saddlepoint:
        return std::get<SaddlepointSampler>(impl_)(rng, stats) / 4;
      case Method::normal:
        return sample_pg_normal(params_, rng);
      case Method::gamma_sum:
        return sample_gamma_sum(params_.jstar(), gamma_sum_terms, rng) / 4;
      case Method::automatic:
        break;
    }
    throw domain_error("PgSampler: unresolved method");
  }

  template <UniformSource R>
  PgDraw draw(R& rng) const {
    return {(*this)(rng), method_, approximate()};
  }

  /// Fills `out` with independent draws.
  template <UniformSource R>
  void fill(std::span<double> out, R& rng) const {
    for (double& x : out) x = (*this)(rng);
  }

 private:
  PgParams params_;
  Method method_ = Method::automatic;
  std::variant<std::monostate, DevroyeSampler, JStarRealSampler, SaddlepointSampler> impl_;
};

template <UniformSource R>
double sample_pg(const PgParams& params, Method method, R& rng) {
  return PgSampler(params, method)(rng);
}

template <UniformSource R>
double sample_pg(const PgParams& params, R& rng) {
  return sample_pg(params, Method::automatic, rng);
}

template <UniformSource R>
void sample_pg(const PgParams& params, std::span<double> out, R& rng,
               Method method = Method::automatic) {
  PgSampler(params, method).fill(out, rng);
}

}  // namespace polyagamma
