// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qdsim/channel.hpp"
#include "qdsim/kernels.hpp"
#include "qdsim/rng.hpp"

using namespace qdsim;
using kernels::Backend;

namespace {

// RAII helper so a test cannot leave a non-default backend behind.
struct BackendGuard {
  ~BackendGuard() { kernels::set_backend(Backend::kAuto); }
};

const ChannelParams kUserI{5.0, 2.0, 0.5235987755982988, 4};
const ChannelParams kUserJ{1.0, 2.0, 0.6981317007977318, 4};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("geometry mirrors the channel moments") {
  const kernels::ChannelGeom geom = kernels::make_geom(kUserI);
  const ChannelMoments m = channel_moments(kUserI);
  CHECK(geom.n == 4);
  CHECK(geom.sigma == std::sqrt(m.var_component));
  CHECK(geom.mean_re == m.mean_re);
  CHECK(geom.mean_im == m.mean_im);
}

TEST_CASE("backend selection round-trips and auto resolves") {
  BackendGuard guard;
  kernels::set_backend(Backend::kScalar);
  CHECK(kernels::active_backend() == Backend::kScalar);
  kernels::set_backend(Backend::kAuto);
  if (kernels::avx2_available()) {
    CHECK(kernels::active_backend() == Backend::kAvx2);
    kernels::set_backend(Backend::kAvx2);
    CHECK(kernels::active_backend() == Backend::kAvx2);
  } else {
    CHECK(kernels::active_backend() == Backend::kScalar);
    CHECK_THROWS_AS(kernels::set_backend(Backend::kAvx2),
                    std::runtime_error);
  }
  CHECK(kernels::backend_name(Backend::kScalar) == "scalar");
  CHECK(kernels::backend_name(Backend::kAvx2) == "avx2");
}

TEST_CASE("pair batch matches a direct reconstruction from the stream") {
  BackendGuard guard;
  kernels::set_backend(Backend::kScalar);
  const kernels::ChannelGeom gi = kernels::make_geom(kUserI);
  const kernels::ChannelGeom gj = kernels::make_geom(kUserJ);
  const uint64_t seed = 31337;
  const uint32_t stream = 0;
  const uint64_t trial0 = 500;
  const int count = 257;
  kernels::PairBatchOut out;
  kernels::pair_stats_batch(gi, gj, seed, stream, trial0, count, out);
  REQUIRE(out.wi.size() == static_cast<size_t>(count));

  for (int t = 0; t < count; ++t) {
    // User i occupies normal blocks [0, n), user j blocks [n, 2n); the
    // accumulation order below is the contract the kernels must follow.
    double wi = 0.0, wj = 0.0, cre = 0.0, cim = 0.0;
    double gi_re[4], gi_im[4], gj_re[4], gj_im[4];
    for (int e = 0; e < 4; ++e) {
      const NormalPair zi = normal_pair(seed, stream, trial0 + t, e);
      const NormalPair zj = normal_pair(seed, stream, trial0 + t, 4 + e);
      gi_re[e] = gi.sigma * zi.z0 + gi.mean_re[e];
      gi_im[e] = gi.sigma * zi.z1 + gi.mean_im[e];
      gj_re[e] = gj.sigma * zj.z0 + gj.mean_re[e];
      gj_im[e] = gj.sigma * zj.z1 + gj.mean_im[e];
    }
    for (int e = 0; e < 4; ++e) {
      wi += gi_re[e] * gi_re[e] + gi_im[e] * gi_im[e];
      wj += gj_re[e] * gj_re[e] + gj_im[e] * gj_im[e];
      cre += gj_re[e] * gi_re[e] + gj_im[e] * gi_im[e];
      cim += gj_re[e] * gi_im[e] - gj_im[e] * gi_re[e];
    }
    CHECK(out.wi[t] == wi);
    CHECK(out.wj[t] == wj);
    CHECK(out.cross_re[t] == cre);
    CHECK(out.cross_im[t] == cim);
  }
}

TEST_CASE("vector backend is bit-identical to the scalar backend") {
  if (!kernels::avx2_available()) return;  // nothing to compare on this host
  BackendGuard guard;
  const kernels::ChannelGeom gi = kernels::make_geom(kUserI);
  const kernels::ChannelGeom gj = kernels::make_geom(kUserJ);
  // Odd counts explicitly exercise the vector kernel's scalar tail.
  for (int count : {1, 3, 4, 257, 10007}) {
    kernels::PairBatchOut scalar_out, avx2_out;
    kernels::set_backend(Backend::kScalar);
    kernels::pair_stats_batch(gi, gj, 42, 0, 1000, count, scalar_out);
    kernels::set_backend(Backend::kAvx2);
    kernels::pair_stats_batch(gi, gj, 42, 0, 1000, count, avx2_out);
    CHECK(scalar_out.wi == avx2_out.wi);
    CHECK(scalar_out.wj == avx2_out.wj);
    CHECK(scalar_out.cross_re == avx2_out.cross_re);
    CHECK(scalar_out.cross_im == avx2_out.cross_im);

    std::vector<double> scalar_w, avx2_w;
    kernels::set_backend(Backend::kScalar);
    kernels::power_batch(gi, 7, 1, 23, count, scalar_w);
    kernels::set_backend(Backend::kAvx2);
    kernels::power_batch(gi, 7, 1, 23, count, avx2_w);
    CHECK(scalar_w == avx2_w);
  }
}

TEST_CASE("batch outputs satisfy positivity and Cauchy-Schwarz") {
  BackendGuard guard;
  const kernels::ChannelGeom gi = kernels::make_geom(kUserI);
  const kernels::ChannelGeom gj = kernels::make_geom(kUserJ);
  kernels::PairBatchOut out;
  kernels::pair_stats_batch(gi, gj, 9, 0, 0, 20000, out);
  for (int t = 0; t < 20000; ++t) {
    CHECK(out.wi[t] > 0.0);
    CHECK(out.wj[t] > 0.0);
    const double cross2 = out.cross_re[t] * out.cross_re[t] +
                          out.cross_im[t] * out.cross_im[t];
    CHECK(cross2 <= out.wi[t] * out.wj[t] * (1.0 + 1e-12));
  }
}

}  // TEST_SUITE
