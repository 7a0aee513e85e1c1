#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "offmoo/types.hpp"

namespace offmoo {

/// Deterministic random stream. mt19937_64's output sequence is pinned by
/// the standard, and all derived draws below avoid std::*_distribution
/// (whose algorithms are implementation-defined), so a seed reproduces the
/// same values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  Real uniform01() {
    return static_cast<Real>(next_u64() >> 11) * 0x1.0p-53;
  }

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased draw from {0, ..., n-1}.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x, r;
    do {
      x = next_u64();
      r = x % n;
    } while (x - r > std::uint64_t{0} - n);
    return r;
  }

  /// Standard normal via Box-Muller (consumes two uniforms per call).
  Real normal() {
    Real u1 = uniform01();
    while (u1 <= 0) u1 = uniform01();
    const Real u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; decorrelates structured seed inputs.
inline std::uint64_t mix_bits(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent sub-seed from up to three stream coordinates,
/// e.g. (run seed, generation, individual index).
inline std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t h = mix_bits(a);
  h = mix_bits(h ^ mix_bits(b + 0x632be59bd9b4e019ULL));
  h = mix_bits(h ^ mix_bits(c + 0x9e6c63d0876a9a47ULL));
  return h;
}

}  // namespace offmoo
