// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace qdsim {
namespace kernels {

namespace {

std::atomic<Backend> g_requested{Backend::kAuto};

Backend resolve(Backend requested) {
  if (requested == Backend::kAuto) {
    return avx2_available() ? Backend::kAvx2 : Backend::kScalar;
  }
  return requested;
}

}  // namespace

bool avx2_available() {
#if defined(QDSIM_COMPILED_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_backend(Backend b) {
  if (b == Backend::kAvx2 && !avx2_available()) {
    throw std::runtime_error(
        "kernels: avx2 backend requested but not available on this CPU or "
        "build");
  }
  g_requested.store(b, std::memory_order_relaxed);
}

Backend active_backend() {
  return resolve(g_requested.load(std::memory_order_relaxed));
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::kAuto:
      return "auto";
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

ChannelGeom make_geom(const ChannelParams& p) {
  const ChannelMoments m = channel_moments(p);
  ChannelGeom g;
  g.mean_re = m.mean_re;
  g.mean_im = m.mean_im;
  g.sigma = std::sqrt(m.var_component);
  g.n = p.n_antennas;
  return g;
}

void pair_stats_batch(const ChannelGeom& gi, const ChannelGeom& gj,
                      uint64_t seed, uint32_t stream, uint64_t trial0,
                      int count, PairBatchOut& out) {
  if (gi.n != gj.n || gi.n < 1) {
    throw std::invalid_argument(
        "pair_stats_batch: geometries must be nonempty and of equal size");
  }
  if (count < 0) {
    throw std::invalid_argument("pair_stats_batch: count must be >= 0");
  }
  out.wi.resize(count);
  out.wj.resize(count);
  out.cross_re.resize(count);
  out.cross_im.resize(count);
  switch (active_backend()) {
#if defined(QDSIM_COMPILED_AVX2)
    case Backend::kAvx2:
      detail::pair_stats_avx2(gi, gj, seed, stream, trial0, count, out);
      return;
#endif
    default:
      detail::pair_stats_scalar(gi, gj, seed, stream, trial0, count, out);
      return;
  }
}

void power_batch(const ChannelGeom& g, uint64_t seed, uint32_t stream,
                 uint64_t trial0, int count, std::vector<double>& w) {
  if (g.n < 1) {
    throw std::invalid_argument("power_batch: geometry must be nonempty");
  }
  if (count < 0) {
    throw std::invalid_argument("power_batch: count must be >= 0");
  }
  w.resize(count);
  switch (active_backend()) {
#if defined(QDSIM_COMPILED_AVX2)
    case Backend::kAvx2:
      detail::power_avx2(g, seed, stream, trial0, count, w);
      return;
#endif
    default:
      detail::power_scalar(g, seed, stream, trial0, count, w);
      return;
  }
}

}  // namespace kernels
}  // namespace qdsim
