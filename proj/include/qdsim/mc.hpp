// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo ground truth: the empirical quasi-degradation probability
// and the empirical moment estimators the analytic surrogates are
// validated against.  Trials are partitioned into fixed-size chunks;
// each chunk's partial sums depend only on (seed, chunk), and chunks are
// folded in index order after all workers finish, so every estimate is
// bit-identical for any worker count.

#pragma once

#include <cstdint>

#include "qdsim/qd.hpp"
#include "qdsim/quadform.hpp"

namespace qdsim {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  uint64_t n_samples = 0;
  uint64_t seed = 0;
};

struct McMoments {
  McEstimate mean;
  McEstimate variance;  // std_error from the asymptotic variance-of-variance
  uint64_t n_samples = 0;
};

// Paired trace estimates: the sampled projector trace (identically 1 up
// to rounding) and the sampled outer-product trace (target: N beta).
struct TraceEstimates {
  McEstimate projector;
  McEstimate outer;
};

// Empirical P[pair is quasi-degraded] over n independent paired draws.
// workers <= 0 means one thread per hardware core.
McEstimate estimate_qd_prob(const QdScenario& s, uint64_t n, uint64_t seed,
                            int workers = 0);

// Sample mean/variance of ||g||^2.
McMoments empirical_power_moments(const ChannelParams& p, uint64_t n,
                                  uint64_t seed, int workers = 0);

// Sample mean/variance of the projection quadratic form
// g_i^H (g_j g_j^H / ||g_j||^2) g_i over paired independent draws.
McMoments empirical_quadform_moments(const QdScenario& s, uint64_t n,
                                     uint64_t seed, int workers = 0);

// Sample means of tr(g g^H / ||g||^2) and tr(g g^H); the projector trace
// is an estimator sanity anchor, the outer trace validates
// expected_outer's trace.
TraceEstimates empirical_projector_trace(const ChannelParams& p, uint64_t n,
                                         uint64_t seed);

// Sample mean of the entrywise error between the empirical outer product
// and a candidate expectation matrix, reported as max absolute entry
// deviation (used to validate expected_outer).
double empirical_outer_max_dev(const ChannelParams& p,
                               const HermitianMatrix& candidate, uint64_t n,
                               uint64_t seed);

}  // namespace qdsim
