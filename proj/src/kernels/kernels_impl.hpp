// SPDX-License-Identifier: Apache-2.0
//
// Internal kernel plumbing shared by the backend translation units.
// The single-trial reference body lives here so the vector backends can
// reuse it bit-exactly for tail trials.

#pragma once

#include "qdsim/kernels.hpp"
#include "qdsim/rng.hpp"

namespace qdsim {
namespace kernels {
namespace detail {

// One trial of the pair kernel.  The operation order below is the
// contract every backend must reproduce lane-for-lane: multiply then add
// for each component, square-and-add per entry, accumulate in entry
// order.  No fused multiply-add anywhere.
inline void pair_stats_one(const ChannelGeom& gi, const ChannelGeom& gj,
                           uint64_t seed, uint32_t stream, uint64_t trial,
                           double& wi, double& wj, double& cross_re,
                           double& cross_im) {
  double acc_wi = 0.0;
  double acc_wj = 0.0;
  double acc_re = 0.0;
  double acc_im = 0.0;
  const int n = gi.n;
  for (int e = 0; e < n; ++e) {
    const NormalPair zi = normal_pair(seed, stream, trial, e);
    const NormalPair zj =
        normal_pair(seed, stream, trial, static_cast<uint32_t>(n + e));
    const double ir = gi.sigma * zi.z0 + gi.mean_re[e];
    const double ii = gi.sigma * zi.z1 + gi.mean_im[e];
    const double jr = gj.sigma * zj.z0 + gj.mean_re[e];
    const double ji = gj.sigma * zj.z1 + gj.mean_im[e];
    acc_wi += ir * ir + ii * ii;
    acc_wj += jr * jr + ji * ji;
    acc_re += jr * ir + ji * ii;
    acc_im += jr * ii - ji * ir;
  }
  wi = acc_wi;
  wj = acc_wj;
  cross_re = acc_re;
  cross_im = acc_im;
}

// One trial of the single-user power kernel.
inline double power_one(const ChannelGeom& g, uint64_t seed,
                        uint32_t stream, uint64_t trial) {
  double acc = 0.0;
  for (int e = 0; e < g.n; ++e) {
    const NormalPair z = normal_pair(seed, stream, trial, e);
    const double re = g.sigma * z.z0 + g.mean_re[e];
    const double im = g.sigma * z.z1 + g.mean_im[e];
    acc += re * re + im * im;
  }
  return acc;
}

void pair_stats_scalar(const ChannelGeom& gi, const ChannelGeom& gj,
                       uint64_t seed, uint32_t stream, uint64_t trial0,
                       int count, PairBatchOut& out);
void power_scalar(const ChannelGeom& g, uint64_t seed, uint32_t stream,
                  uint64_t trial0, int count, std::vector<double>& w);

#if defined(QDSIM_COMPILED_AVX2)
void pair_stats_avx2(const ChannelGeom& gi, const ChannelGeom& gj,
                     uint64_t seed, uint32_t stream, uint64_t trial0,
                     int count, PairBatchOut& out);
void power_avx2(const ChannelGeom& g, uint64_t seed, uint32_t stream,
                uint64_t trial0, int count, std::vector<double>& w);
#endif

}  // namespace detail
}  // namespace kernels
}  // namespace qdsim
