// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random numbers: Philox4x32-10 blocks addressed by
// (seed, stream, trial, block), mapped to uniforms in (0, 1) and to
// standard normal pairs via Box-Muller.  Because every draw is a pure
// function of its address, Monte-Carlo results are independent of thread
// count and iteration order by construction.

#pragma once

#include <array>
#include <cstdint>

namespace qdsim {

// One Philox4x32-10 block: four 32-bit words from a 128-bit counter and
// a 64-bit key.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

// Uniform in the open interval (0, 1) from two 32-bit words: the top 52
// bits of the combined 64-bit value, offset by half a step so neither
// endpoint is ever produced (exact arithmetic: every result is a
// multiple of 2^-53 in [2^-53, 1 - 2^-53]).
double u01_from_bits(uint32_t hi, uint32_t lo);

// The per-draw address.  trial indexes the Monte-Carlo repetition, block
// the draw within a trial, stream the independent substream of the
// experiment.  key is the user seed.
struct NormalPair {
  double z0;
  double z1;
};
NormalPair normal_pair(uint64_t seed, uint32_t stream, uint64_t trial,
                       uint32_t block);

// Sequential adapter over the counter-based generator for samplers that
// consume a variable number of draws (each call advances the trial
// counter of a dedicated stream).
class NormalStream {
 public:
  NormalStream(uint64_t seed, uint32_t stream)
      : seed_(seed), stream_(stream) {}

  // Next standard normal.
  double next();
  // Next uniform in (0, 1).
  double next_u01();

 private:
  uint64_t seed_;
  uint32_t stream_;
  uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Gamma(shape, scale) sampler (Marsaglia-Tsang squeeze method), used by
// test oracles.  shape > 0, scale > 0.
double sample_gamma(double shape, double scale, NormalStream& stream);

// Derive the seed for an experiment row from the experiment seed and the
// row index (SplitMix64 finalizer), so rows are decorrelated but still a
// pure function of (seed, row).
uint64_t derive_row_seed(uint64_t seed, uint64_t row_index);

}  // namespace qdsim
