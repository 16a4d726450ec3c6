#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace polyagamma {

/// Anything that yields uniform variates strictly inside (0,1). All samplers
/// in this library draw exclusively through this interface.
template <class R>
concept UniformSource = requires(R& r) {
  { r.uniform() } -> std::convertible_to<double>;
};

/// Seedable deterministic uniform stream backed by a 64-bit Mersenne twister.
/// Identical seeds give identical sequences on every platform. A stream is
/// single-owner; give each thread its own via split().
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  /// Uniform draw in the open interval (0,1) with 53 random bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

  /// Independent sub-stream keyed by `index`.
  RngStream split(std::uint64_t index) const {
    return RngStream(mix(seed_ ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace polyagamma
