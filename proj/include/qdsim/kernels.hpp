// SPDX-License-Identifier: Apache-2.0
//
// Batch kernels for the Monte-Carlo inner loops, with a scalar reference
// implementation and an AVX2 variant selected at runtime.  Both variants
// consume identical normal deviates (the counter-based generator and the
// Box-Muller transform stay scalar so the random sequence is a fixed
// function of the draw address) and perform the per-trial reductions in
// the same left-to-right order, so scalar and AVX2 results are required
// to be bit-identical, not merely close.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdsim/channel.hpp"

namespace qdsim {
namespace kernels {

enum class Backend { kAuto, kScalar, kAvx2 };

// Select the implementation used by subsequent batch calls.  kAuto picks
// the widest variant the CPU supports.  Requesting kAvx2 on a CPU (or
// build) without AVX2 throws std::runtime_error.
void set_backend(Backend b);
Backend active_backend();
std::string backend_name(Backend b);
bool avx2_available();

// Precomputed per-entry constants for channel assembly: g_n = (s*z0 +
// mean_re[n]) + i*(s*z1 + mean_im[n]) with s = sqrt(var_component).
struct ChannelGeom {
  std::vector<double> mean_re;
  std::vector<double> mean_im;
  double sigma = 0.0;
  int n = 0;
};
ChannelGeom make_geom(const ChannelParams& p);

// Per-trial statistics for a user pair drawn independently:
//   wi[t] = ||g_i||^2, wj[t] = ||g_j||^2,
//   cross_re/cross_im[t] = g_j^H g_i (inner product, entries accumulated
//   in index order).
// Trial t of the batch uses draw addresses (seed, stream, trial0 + t,
// block), with user i occupying blocks [0, n) and user j blocks [n, 2n).
struct PairBatchOut {
  std::vector<double> wi;
  std::vector<double> wj;
  std::vector<double> cross_re;
  std::vector<double> cross_im;
};
void pair_stats_batch(const ChannelGeom& gi, const ChannelGeom& gj,
                      uint64_t seed, uint32_t stream, uint64_t trial0,
                      int count, PairBatchOut& out);

// Squared norms only, for single-user power sweeps (blocks [0, n)).
void power_batch(const ChannelGeom& g, uint64_t seed, uint32_t stream,
                 uint64_t trial0, int count, std::vector<double>& w);

}  // namespace kernels
}  // namespace qdsim
