#pragma once

#include <cstdint>
#include <random>

namespace relgas {

// Deterministic uniform generator. The mapping from raw 64-bit draws to
// doubles is spelled out here (rather than using std::uniform_real_distribution)
// so that streams are reproducible independent of the standard library build.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 eng_;
};

}  // namespace relgas
