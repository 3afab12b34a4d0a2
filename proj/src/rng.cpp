// SPDX-License-Identifier: Apache-2.0

#include "qdsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qdsim {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline void mul_hi_lo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  const uint64_t product = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(product >> 32);
  lo = static_cast<uint32_t>(product);
}

inline std::array<uint32_t, 4> philox_round(
    const std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
  uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM0, ctr[0], hi0, lo0);
  mul_hi_lo(kPhiloxM1, ctr[2], hi1, lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

constexpr double kTwoPi = 6.283185307179586476925287;

}  // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
  std::array<uint32_t, 4> ctr = counter;
  std::array<uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    ctr = philox_round(ctr, k);
  }
  return ctr;
}

double u01_from_bits(uint32_t hi, uint32_t lo) {
  const uint64_t bits = (static_cast<uint64_t>(hi) << 32) | lo;
  // Top 52 bits, offset by half a step.  Both the product and the sum
  // are exact (every result is a multiple of 2^-53 no larger than
  // 1 - 2^-53), so the value is strictly inside (0, 1); a 53-bit
  // mantissa with the same offset would round its top value up to 1.
  return static_cast<double>(bits >> 12) * 0x1.0p-52 + 0x1.0p-53;
}

NormalPair normal_pair(uint64_t seed, uint32_t stream, uint64_t trial,
                       uint32_t block) {
  const std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(trial), static_cast<uint32_t>(trial >> 32),
      block, stream};
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                       static_cast<uint32_t>(seed >> 32)};
  const std::array<uint32_t, 4> x = philox4x32(ctr, key);
  const double u1 = u01_from_bits(x[0], x[1]);
  const double u2 = u01_from_bits(x[2], x[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const NormalPair p = normal_pair(seed_, stream_, counter_++, 0);
  cached_ = p.z1;
  has_cached_ = true;
  return p.z0;
}

double NormalStream::next_u01() {
  const std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(counter_), static_cast<uint32_t>(counter_ >> 32),
      0u, stream_};
  ++counter_;
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed_),
                                       static_cast<uint32_t>(seed_ >> 32)};
  const std::array<uint32_t, 4> x = philox4x32(ctr, key);
  return u01_from_bits(x[0], x[1]);
}

double sample_gamma(double shape, double scale, NormalStream& stream) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw std::domain_error(
        "sample_gamma: shape and scale must be positive");
  }
  if (shape < 1.0) {
    // Boost to shape + 1 and correct with a uniform power.
    const double u = stream.next_u01();
    return sample_gamma(shape + 1.0, scale, stream) *
           std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = stream.next();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = stream.next_u01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v * scale;
    }
  }
}

uint64_t derive_row_seed(uint64_t seed, uint64_t row_index) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * (row_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace qdsim
