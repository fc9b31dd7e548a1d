#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace isac {

namespace detail {
// splitmix64: cheap, well-mixed seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Seeded random stream with platform-stable draw sequences.
///
/// Gaussian variates come from Box-Muller over the engine's uniform output,
/// so a given seed produces identical sequences regardless of the standard
/// library's distribution internals. One stream per Monte Carlo run.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from (master seed, run index, lane).
  /// Lanes separate unrelated consumers (e.g. schemes) under one master seed.
  static RandomStream derive(std::uint64_t master_seed, std::uint64_t run_index,
                             std::uint64_t lane = 0) {
    std::uint64_t s = master_seed;
    std::uint64_t a = detail::splitmix64(s);
    s ^= 0x517cc1b727220a95ull * (run_index + 1);
    std::uint64_t b = detail::splitmix64(s);
    s ^= 0x2545f4914f6cdd1dull * (lane + 1);
    std::uint64_t c = detail::splitmix64(s);
    return RandomStream(a ^ (b * 0xd6e8feb86659fd93ull) ^ c);
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal draw (Box-Muller, pairs cached).
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Circularly symmetric complex Gaussian, zero mean, unit variance.
  std::complex<double> complex_normal() {
    const double s = std::sqrt(0.5);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace isac
