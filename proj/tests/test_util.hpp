// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the unit-test suites: a tiny deterministic RNG for
// property tests (independent of the library's own generator) and a few
// numeric comparison shorthands.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace testutil {

// SplitMix64: deterministic, seedable, independent from the library RNG.
struct TestRng {
  uint64_t state;

  explicit TestRng(uint64_t seed) : state(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double u =
        static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // Standard normal via Box-Muller (fresh draws each call).
  double normal() {
    double u1 = uniform(0.0, 1.0);
    while (u1 <= 0.0) u1 = uniform(0.0, 1.0);
    const double u2 = uniform(0.0, 1.0);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586 * u2);
  }

  std::vector<std::complex<double>> complex_vector(int n, double spread) {
    std::vector<std::complex<double>> v(n);
    for (int m = 0; m < n; ++m) {
      v[m] = {spread * normal(), spread * normal()};
    }
    return v;
  }
};

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace testutil
