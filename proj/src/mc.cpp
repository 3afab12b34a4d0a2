// SPDX-License-Identifier: Apache-2.0

#include "qdsim/mc.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <thread>
#include <vector>

#include "qdsim/kernels.hpp"

namespace qdsim {

namespace {

// Fixed chunk size: every chunk's partial result is a pure function of
// (seed, chunk index), and chunks are folded in index order, so the
// worker count never changes the outcome.
constexpr uint64_t kChunk = 8192;

// Substream ids, disjoint by convention: batch kernels use 0 and 1,
// sequential samplers 2 and up.
constexpr uint32_t kStreamPair = 0;
constexpr uint32_t kStreamPower = 1;
constexpr uint32_t kStreamTrace = 2;
constexpr uint32_t kStreamOuter = 3;

void check_samples(uint64_t n, const char* who) {
  if (n < 1000) {
    std::ostringstream os;
    os << who << ": requires n >= 1000, got " << n;
    throw std::invalid_argument(os.str());
  }
}

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Run fn(chunk_index, trial0, count) for every chunk of [0, n) across the
// worker pool.  fn must write only into its own chunk's slot.
template <typename Fn>
void run_chunks(uint64_t n, int workers, const Fn& fn) {
  const uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  const int pool = static_cast<int>(
      std::min<uint64_t>(n_chunks, resolve_workers(workers)));

  auto work = [&](int tid) {
    for (uint64_t c = tid; c < n_chunks; c += pool) {
      const uint64_t trial0 = c * kChunk;
      const int count = static_cast<int>(std::min(kChunk, n - trial0));
      fn(c, trial0, count);
    }
  };

  if (pool <= 1) {
    work(0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(pool);
  threads.reserve(pool);
  for (int tid = 0; tid < pool; ++tid) {
    threads.emplace_back([&, tid] {
      try {
        work(tid);
      } catch (...) {
        errors[tid] = std::current_exception();
      }
    });
  }
  for (std::thread& th : threads) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Raw power sums of one chunk, accumulated in trial order.
struct MomentSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;

  void add(double x) {
    const double x2 = x * x;
    s1 += x;
    s2 += x2;
    s3 += x2 * x;
    s4 += x2 * x2;
  }
  void fold(const MomentSums& other) {
    s1 += other.s1;
    s2 += other.s2;
    s3 += other.s3;
    s4 += other.s4;
  }
};

McMoments finalize_moments(const MomentSums& s, uint64_t n, uint64_t seed) {
  const double dn = static_cast<double>(n);
  const double mean = s.s1 / dn;
  const double m2 = s.s2 / dn - mean * mean;
  const double sample_var = (s.s2 - dn * mean * mean) / (dn - 1.0);
  const double m4 = s.s4 / dn - 4.0 * mean * (s.s3 / dn) +
                    6.0 * mean * mean * (s.s2 / dn) -
                    3.0 * mean * mean * mean * mean;
  const double se_mean = std::sqrt(std::max(0.0, sample_var) / dn);
  // Asymptotic standard error of the sample variance.
  const double se_var =
      std::sqrt(std::max(0.0, (m4 - m2 * m2) / dn));
  McMoments out;
  out.mean = {mean, se_mean, n, seed};
  out.variance = {std::max(0.0, sample_var), se_var, n, seed};
  out.n_samples = n;
  return out;
}

}  // namespace

McEstimate estimate_qd_prob(const QdScenario& s, uint64_t n, uint64_t seed,
                            int workers) {
  check_samples(n, "estimate_qd_prob");
  validate(s);
  const kernels::ChannelGeom gi = kernels::make_geom(s.user_i);
  const kernels::ChannelGeom gj = kernels::make_geom(s.user_j);

  const uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<uint64_t> hits(n_chunks, 0);

  run_chunks(n, workers, [&](uint64_t c, uint64_t trial0, int count) {
    thread_local kernels::PairBatchOut out;
    kernels::pair_stats_batch(gi, gj, seed, kStreamPair, trial0, count,
                              out);
    uint64_t h = 0;
    for (int t = 0; t < count; ++t) {
      const double wi = out.wi[t];
      const double wj = out.wj[t];
      const double cross =
          out.cross_re[t] * out.cross_re[t] +
          out.cross_im[t] * out.cross_im[t];
      const double c2 = std::min(1.0, cross / (wi * wj));
      if (c2 > 0.0 &&
          q_threshold(c2, s.rate_i, s.rate_j) <= wi / wj) {
        ++h;
      }
    }
    hits[c] = h;
  });

  uint64_t total = 0;
  for (uint64_t h : hits) total += h;  // integer fold: order-free
  const double p = static_cast<double>(total) / static_cast<double>(n);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {p, se, n, seed};
}

McMoments empirical_power_moments(const ChannelParams& p, uint64_t n,
                                  uint64_t seed, int workers) {
  check_samples(n, "empirical_power_moments");
  const kernels::ChannelGeom g = kernels::make_geom(p);

  const uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<MomentSums> partial(n_chunks);

  run_chunks(n, workers, [&](uint64_t c, uint64_t trial0, int count) {
    thread_local std::vector<double> w;
    kernels::power_batch(g, seed, kStreamPower, trial0, count, w);
    MomentSums sums;
    for (int t = 0; t < count; ++t) sums.add(w[t]);
    partial[c] = sums;
  });

  MomentSums total;
  for (const MomentSums& sums : partial) total.fold(sums);
  return finalize_moments(total, n, seed);
}

McMoments empirical_quadform_moments(const QdScenario& s, uint64_t n,
                                     uint64_t seed, int workers) {
  check_samples(n, "empirical_quadform_moments");
  validate(s);
  const kernels::ChannelGeom gi = kernels::make_geom(s.user_i);
  const kernels::ChannelGeom gj = kernels::make_geom(s.user_j);

  const uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<MomentSums> partial(n_chunks);

  run_chunks(n, workers, [&](uint64_t c, uint64_t trial0, int count) {
    thread_local kernels::PairBatchOut out;
    kernels::pair_stats_batch(gi, gj, seed, kStreamPair, trial0, count,
                              out);
    MomentSums sums;
    for (int t = 0; t < count; ++t) {
      // g_i^H (g_j g_j^H / ||g_j||^2) g_i = |g_j^H g_i|^2 / ||g_j||^2.
      const double cross =
          out.cross_re[t] * out.cross_re[t] +
          out.cross_im[t] * out.cross_im[t];
      sums.add(cross / out.wj[t]);
    }
    partial[c] = sums;
  });

  MomentSums total;
  for (const MomentSums& sums : partial) total.fold(sums);
  return finalize_moments(total, n, seed);
}

TraceEstimates empirical_projector_trace(const ChannelParams& p, uint64_t n,
                                         uint64_t seed) {
  check_samples(n, "empirical_projector_trace");
  NormalStream stream(seed, kStreamTrace);
  MomentSums proj;
  MomentSums outer;
  for (uint64_t i = 0; i < n; ++i) {
    const std::vector<cplx> g = sample_channel(p, stream);
    double w = 0.0;
    for (const cplx& e : g) w += std::norm(e);
    double tr_proj = 0.0;
    for (const cplx& e : g) tr_proj += std::norm(e) / w;
    proj.add(tr_proj);
    outer.add(w);
  }
  const McMoments proj_m = finalize_moments(proj, n, seed);
  const McMoments outer_m = finalize_moments(outer, n, seed);
  return {proj_m.mean, outer_m.mean};
}

double empirical_outer_max_dev(const ChannelParams& p,
                               const HermitianMatrix& candidate, uint64_t n,
                               uint64_t seed) {
  check_samples(n, "empirical_outer_max_dev");
  if (candidate.size() != p.n_antennas) {
    throw std::invalid_argument(
        "empirical_outer_max_dev: matrix dimension must match antennas");
  }
  NormalStream stream(seed, kStreamOuter);
  const int dim = p.n_antennas;
  std::vector<cplx> acc(static_cast<size_t>(dim) * dim, 0.0);
  for (uint64_t i = 0; i < n; ++i) {
    const std::vector<cplx> g = sample_channel(p, stream);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        acc[static_cast<size_t>(r) * dim + c] += g[r] * std::conj(g[c]);
      }
    }
  }
  double max_dev = 0.0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const cplx mean =
          acc[static_cast<size_t>(r) * dim + c] / static_cast<double>(n);
      max_dev = std::max(max_dev, std::abs(mean - candidate.at(r, c)));
    }
  }
  return max_dev;
}

}  // namespace qdsim
