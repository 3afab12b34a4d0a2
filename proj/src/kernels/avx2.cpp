// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variant: four trials per vector, one lane per trial.  The normal
// deviates come from the same scalar generator as the reference kernel;
// only the channel assembly and reductions are vectorized, with the
// multiply/add sequence mirroring the scalar contract so lanes are
// bit-identical to scalar trials.  No FMA instructions are emitted: the
// scalar reference rounds after every multiply, so fusing would change
// results.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace qdsim {
namespace kernels {
namespace detail {

namespace {

struct QuadNormals {
  __m256d z0;
  __m256d z1;
};

// Four trials' deviates for one block, gathered from the scalar source.
inline QuadNormals gather4(uint64_t seed, uint32_t stream, uint64_t trial,
                           uint32_t block) {
  const NormalPair a = normal_pair(seed, stream, trial + 0, block);
  const NormalPair b = normal_pair(seed, stream, trial + 1, block);
  const NormalPair c = normal_pair(seed, stream, trial + 2, block);
  const NormalPair d = normal_pair(seed, stream, trial + 3, block);
  return {_mm256_set_pd(d.z0, c.z0, b.z0, a.z0),
          _mm256_set_pd(d.z1, c.z1, b.z1, a.z1)};
}

inline __m256d assemble(__m256d sigma, __m256d z, double mean) {
  return _mm256_add_pd(_mm256_mul_pd(sigma, z), _mm256_set1_pd(mean));
}

}  // namespace

void pair_stats_avx2(const ChannelGeom& gi, const ChannelGeom& gj,
                     uint64_t seed, uint32_t stream, uint64_t trial0,
                     int count, PairBatchOut& out) {
  const int n = gi.n;
  const __m256d sig_i = _mm256_set1_pd(gi.sigma);
  const __m256d sig_j = _mm256_set1_pd(gj.sigma);

  int t = 0;
  for (; t + 4 <= count; t += 4) {
    const uint64_t trial = trial0 + t;
    __m256d wi = _mm256_setzero_pd();
    __m256d wj = _mm256_setzero_pd();
    __m256d cre = _mm256_setzero_pd();
    __m256d cim = _mm256_setzero_pd();
    for (int e = 0; e < n; ++e) {
      const QuadNormals zi = gather4(seed, stream, trial, e);
      const QuadNormals zj =
          gather4(seed, stream, trial, static_cast<uint32_t>(n + e));
      const __m256d ir = assemble(sig_i, zi.z0, gi.mean_re[e]);
      const __m256d ii = assemble(sig_i, zi.z1, gi.mean_im[e]);
      const __m256d jr = assemble(sig_j, zj.z0, gj.mean_re[e]);
      const __m256d ji = assemble(sig_j, zj.z1, gj.mean_im[e]);
      wi = _mm256_add_pd(
          wi, _mm256_add_pd(_mm256_mul_pd(ir, ir), _mm256_mul_pd(ii, ii)));
      wj = _mm256_add_pd(
          wj, _mm256_add_pd(_mm256_mul_pd(jr, jr), _mm256_mul_pd(ji, ji)));
      cre = _mm256_add_pd(
          cre, _mm256_add_pd(_mm256_mul_pd(jr, ir), _mm256_mul_pd(ji, ii)));
      cim = _mm256_add_pd(
          cim, _mm256_sub_pd(_mm256_mul_pd(jr, ii), _mm256_mul_pd(ji, ir)));
    }
    _mm256_storeu_pd(&out.wi[t], wi);
    _mm256_storeu_pd(&out.wj[t], wj);
    _mm256_storeu_pd(&out.cross_re[t], cre);
    _mm256_storeu_pd(&out.cross_im[t], cim);
  }
  for (; t < count; ++t) {
    pair_stats_one(gi, gj, seed, stream, trial0 + t, out.wi[t], out.wj[t],
                   out.cross_re[t], out.cross_im[t]);
  }
}

void power_avx2(const ChannelGeom& g, uint64_t seed, uint32_t stream,
                uint64_t trial0, int count, std::vector<double>& w) {
  const __m256d sigma = _mm256_set1_pd(g.sigma);
  int t = 0;
  for (; t + 4 <= count; t += 4) {
    const uint64_t trial = trial0 + t;
    __m256d acc = _mm256_setzero_pd();
    for (int e = 0; e < g.n; ++e) {
      const QuadNormals z = gather4(seed, stream, trial, e);
      const __m256d re = assemble(sigma, z.z0, g.mean_re[e]);
      const __m256d im = assemble(sigma, z.z1, g.mean_im[e]);
      acc = _mm256_add_pd(
          acc, _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
    }
    _mm256_storeu_pd(&w[t], acc);
  }
  for (; t < count; ++t) {
    w[t] = power_one(g, seed, stream, trial0 + t);
  }
}

}  // namespace detail
}  // namespace kernels
}  // namespace qdsim
