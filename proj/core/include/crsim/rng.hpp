#pragma once

#include <cstdint>
#include <random>

namespace crsim {

// Reproducibility contract: every stochastic routine takes an explicit seed,
// and independent samples draw from streams derived via derive_seed(seed, k).
// Results are therefore bit-identical for a given seed no matter how the
// sample loop is scheduled across threads.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = splitmix64(base ^ 0x6a09e667f3bcc908ULL);
  s = splitmix64(s ^ splitmix64(a));
  s = splitmix64(s ^ splitmix64(b));
  s = splitmix64(s ^ splitmix64(c));
  return s;
}

// Thin wrapper over std::mt19937_64 that provides only distributions with a
// bit-stable mapping from engine output (the standard pins the engine but not
// std::uniform_real_distribution and friends).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform angle on [0, 2*pi).
  double angle() { return uniform(0.0, 6.283185307179586476925286766559); }

  // Rademacher +/-1.
  int sign() { return (engine_() & 1ULL) ? 1 : -1; }

  // Bernoulli with success probability p.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crsim
