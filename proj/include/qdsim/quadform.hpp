// SPDX-License-Identifier: Apache-2.0
//
// Moments of Hermitian quadratic forms in complex Gaussian vectors with
// scaled-identity covariance, for both deterministic matrices and
// independent stochastic matrices known through their expectation, plus
// the expected projector of a user's channel direction and the gamma
// surrogate for the projected-power numerator.

#pragma once

#include <vector>

#include "qdsim/channel.hpp"
#include "qdsim/dist.hpp"

namespace qdsim {

// Dense Hermitian matrix, row-major.  The constructor enforces
// conjugate symmetry to 1e-12 (relative to the largest entry).
class HermitianMatrix {
 public:
  HermitianMatrix(std::vector<cplx> entries, int n);

  int size() const { return n_; }
  const cplx& at(int row, int col) const { return entries_[row * n_ + col]; }
  const std::vector<cplx>& entries() const { return entries_; }

  double trace() const;            // real by symmetry
  double frobenius_sq() const;     // sum |A_mn|^2 = tr(A^2) for Hermitian A

 private:
  std::vector<cplx> entries_;
  int n_;
};

// z^H A z, which is real for Hermitian A.  The accumulated imaginary
// part must be below 1e-10 relative to the value (guards against a
// non-Hermitian matrix slipping through); it is then discarded.
double eval_quadform(const HermitianMatrix& a, const std::vector<cplx>& z);

// Mean vector and scaled-identity covariance of a Gaussian vector.
// cov_scale is the variance of each complex entry, so each of its two
// real components carries cov_scale / 2.
struct GaussianVectorStats {
  std::vector<cplx> mean;
  double cov_scale = 0.0;
};
GaussianVectorStats mean_and_cov(const ChannelParams& p);

struct QuadformMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Moments of z^H A z for z complex Gaussian with the given stats and A
// deterministic Hermitian.
QuadformMoments quadform_moments_det(const HermitianMatrix& a,
                                     const GaussianVectorStats& z);

// Moments of z^H S z for S an independent random Hermitian matrix known
// through its expectation E[S] (variability of S beyond its mean is not
// modeled; only E[S] enters).
QuadformMoments quadform_moments_stoch(const HermitianMatrix& expected_s,
                                       const GaussianVectorStats& z);

// E[g g^H] for a user's channel vector.
HermitianMatrix expected_outer(const ChannelParams& p);

// E[g g^H / ||g||^2] approximated as E[g g^H] * E[1 / ||g||^2], with the
// inverse-power mean taken from the power surrogate (requires its shape
// to exceed 1).
HermitianMatrix expected_projector(const ChannelParams& p);

// Gamma surrogate for the projection of user i's power onto user j's
// expected channel direction: the stochastic quadratic-form moments of
// g_i^H Pi_j g_i, moment-matched to a gamma distribution.
GammaSurrogate projected_power_surrogate(const ChannelParams& user_i,
                                         const ChannelParams& user_j);

}  // namespace qdsim
