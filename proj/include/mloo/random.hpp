#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

#include "mloo/types.hpp"

namespace mloo {

/// splitmix64 mixing step; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministically derives a child seed from a base seed and a tag path,
/// e.g. derive_seed(master, {kExperiment, index, repetition}). Used so resumed
/// runs reproduce every random draw without persisting generator state.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = mix64(base);
  for (std::uint64_t t : tags) s = mix64(s ^ t);
  return s;
}

// Stream tags for derive_seed.
inline constexpr std::uint64_t kStreamExperiment = 0x45585045;  // experiment noise
inline constexpr std::uint64_t kStreamRefresh = 0x52465253;     // particle restarts
inline constexpr std::uint64_t kStreamPropose = 0x50525053;     // acquisition starts
inline constexpr std::uint64_t kStreamInit = 0x494e4954;        // ensemble init

/// Deterministic double-precision generator. Draws are produced from explicit
/// bit manipulation of mt19937_64 output so sequences are identical across
/// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; one pair per two uniforms.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0,1] so the log is finite.
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  Vector uniform_vector(const Box& box) {
    Vector x(box.dim());
    for (int j = 0; j < box.dim(); ++j) x(j) = uniform(box.lo(j), box.hi(j));
    return x;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mloo
