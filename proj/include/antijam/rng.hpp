#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace antijam {

// splitmix64 finalizer. Bijective for any fixed additive constant.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives the seed for run `run_index` from a base seed. Injective in
// run_index for a fixed base, so parallel runs never share a stream.
inline std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  return splitmix64(base_seed ^ splitmix64(run_index));
}

// Deterministic random stream. Distribution code is hand-rolled on top of
// the raw 64-bit engine so results are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Uniform in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Poisson draw by CDF inversion. Sequential search is exact and fast for
  // the slot-scale rates used here.
  int poisson(double lambda) {
    if (lambda < 0.0) throw std::domain_error("poisson: lambda must be >= 0");
    if (lambda == 0.0) return 0;
    const double u = uniform();
    double p = std::exp(-lambda);
    double cdf = p;
    int k = 0;
    const int k_max = static_cast<int>(lambda + 40.0 * std::sqrt(lambda) + 32.0);
    while (u > cdf && k < k_max) {
      ++k;
      p *= lambda / k;
      cdf += p;
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace antijam
