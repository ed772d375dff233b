#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace vsmpriv::rng {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-style seed derivation: distinct paths under one master seed yield
/// independent streams, so parallel consumers never share state.
inline std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t v : path) h = mix64(h ^ mix64(v));
  return h;
}

// Stream tags used with derive(); keep values stable, they are part of the
// reproducibility contract.
inline constexpr std::uint64_t kStreamSchedule = 0x5348u;   // per-trial schedule draws
inline constexpr std::uint64_t kStreamNoise = 0x4E4Fu;      // per-trial receiver noise
inline constexpr std::uint64_t kStreamOracle = 0x4F52u;     // per-sample simplex points
inline constexpr std::uint64_t kStreamAnneal = 0x414Eu;     // MPV-I solver chain
inline constexpr std::uint64_t kStreamSubset = 0x5355u;     // phase-set subset sampling

/// Deterministic draws built directly on mt19937_64 output so streams do not
/// depend on the standard library's distribution implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log argument.
  double uniform_open() { return static_cast<double>((bits() >> 11) + 1) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one deviate per pair of uniforms).
  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Unit-rate exponential.
  double exponential() { return -std::log(uniform_open()); }

  /// Unbiased uniform integer in [0, n); rejection-sampled.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t r = bits();
    while (r > limit) r = bits();
    return r % n;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace vsmpriv::rng
