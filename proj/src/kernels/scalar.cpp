// SPDX-License-Identifier: Apache-2.0

#include "kernels_impl.hpp"

namespace qdsim {
namespace kernels {
namespace detail {

void pair_stats_scalar(const ChannelGeom& gi, const ChannelGeom& gj,
                       uint64_t seed, uint32_t stream, uint64_t trial0,
                       int count, PairBatchOut& out) {
  for (int t = 0; t < count; ++t) {
    pair_stats_one(gi, gj, seed, stream, trial0 + t, out.wi[t], out.wj[t],
                   out.cross_re[t], out.cross_im[t]);
  }
}

void power_scalar(const ChannelGeom& g, uint64_t seed, uint32_t stream,
                  uint64_t trial0, int count, std::vector<double>& w) {
  for (int t = 0; t < count; ++t) {
    w[t] = power_one(g, seed, stream, trial0 + t);
  }
}

}  // namespace detail
}  // namespace kernels
}  // namespace qdsim
