#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "toeplitz_bounds/disk.hpp"

namespace tb::testing {

// Uniform draw in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Complex random_point(std::mt19937_64& rng, double max_radius) {
  const double r = max_radius * std::sqrt(uniform01(rng));
  const double t = 2.0 * std::numbers::pi * uniform01(rng);
  return std::polar(r, t);
}

// Zeros pairwise at pseudohyperbolic distance >= 1e-3.
inline std::vector<Complex> random_zeros(std::mt19937_64& rng, int n, double max_radius) {
  std::vector<Complex> zeros;
  while (static_cast<int>(zeros.size()) < n) {
    const Complex a = random_point(rng, max_radius);
    bool ok = true;
    for (Complex b : zeros) ok = ok && pseudohyperbolic(a, b) > 1e-3;
    if (ok) zeros.push_back(a);
  }
  return zeros;
}

inline int random_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform01(rng) * (hi - lo + 1));
}

}  // namespace tb::testing
