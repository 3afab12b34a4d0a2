// SPDX-License-Identifier: Apache-2.0

#include "qdsim/quadform.hpp"

#include <cmath>
#include <sstream>

namespace qdsim {

HermitianMatrix::HermitianMatrix(std::vector<cplx> entries, int n)
    : entries_(std::move(entries)), n_(n) {
  if (n < 1 || entries_.size() != static_cast<size_t>(n) * n) {
    throw std::invalid_argument(
        "HermitianMatrix: entry count does not match dimension");
  }
  double max_abs = 0.0;
  for (const cplx& e : entries_) max_abs = std::max(max_abs, std::abs(e));
  const double tol = 1e-12 * max_abs;
  for (int r = 0; r < n; ++r) {
    if (std::fabs(at(r, r).imag()) > tol) {
      throw std::invalid_argument(
          "HermitianMatrix: diagonal entry has a non-real part beyond "
          "tolerance");
    }
    for (int c = r + 1; c < n; ++c) {
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) {
        std::ostringstream os;
        os << "HermitianMatrix: entries (" << r << "," << c
           << ") violate conjugate symmetry beyond tolerance";
        throw std::invalid_argument(os.str());
      }
    }
  }
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (int r = 0; r < n_; ++r) t += at(r, r).real();
  return t;
}

double HermitianMatrix::frobenius_sq() const {
  double s = 0.0;
  for (const cplx& e : entries_) s += std::norm(e);
  return s;
}

double eval_quadform(const HermitianMatrix& a, const std::vector<cplx>& z) {
  const int n = a.size();
  if (z.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument(
        "eval_quadform: vector length does not match matrix dimension");
  }
  cplx acc = 0.0;
  double term_scale = 0.0;  // accumulated magnitude before cancellation
  for (int r = 0; r < n; ++r) {
    cplx row = 0.0;
    for (int c = 0; c < n; ++c) row += a.at(r, c) * z[c];
    const cplx contrib = std::conj(z[r]) * row;
    acc += contrib;
    term_scale += std::abs(contrib);
  }
  // For a Hermitian matrix the imaginary parts cancel exactly in real
  // arithmetic; in floating point a residue up to a few ulp of the
  // accumulated magnitude survives.  Anything beyond 1e-10 of the value
  // (with a roundoff allowance on near-cancelled results) indicates a
  // non-Hermitian input.
  const double im = std::fabs(acc.imag());
  const double allowance = std::max(1e-10 * std::fabs(acc.real()),
                                    100.0 * 1e-16 * term_scale);
  if (im > allowance) {
    std::ostringstream os;
    os << "eval_quadform: imaginary residue " << im
       << " exceeds tolerance for value " << acc.real();
    throw std::invalid_argument(os.str());
  }
  return acc.real();
}

GaussianVectorStats mean_and_cov(const ChannelParams& p) {
  const ChannelMoments m = channel_moments(p);
  GaussianVectorStats stats;
  stats.mean.resize(p.n_antennas);
  for (int n = 0; n < p.n_antennas; ++n) {
    stats.mean[n] = {m.mean_re[n], m.mean_im[n]};
  }
  // Covariance per complex entry; each real component carries half.
  stats.cov_scale = 2.0 * m.var_component;
  return stats;
}

namespace {

// ||A m||^2 for Hermitian A, used by the variance formulas.
double a_mean_norm_sq(const HermitianMatrix& a,
                      const std::vector<cplx>& mean) {
  const int n = a.size();
  double total = 0.0;
  for (int r = 0; r < n; ++r) {
    cplx row = 0.0;
    for (int c = 0; c < n; ++c) row += a.at(r, c) * mean[c];
    total += std::norm(row);
  }
  return total;
}

double mean_quadform(const HermitianMatrix& a,
                     const std::vector<cplx>& mean) {
  // m^H A m is real for Hermitian A; take the real part directly.
  const int n = a.size();
  cplx acc = 0.0;
  for (int r = 0; r < n; ++r) {
    cplx row = 0.0;
    for (int c = 0; c < n; ++c) row += a.at(r, c) * mean[c];
    acc += std::conj(mean[r]) * row;
  }
  return acc.real();
}

QuadformMoments moments_from_matrix(const HermitianMatrix& a,
                                    const GaussianVectorStats& z) {
  if (static_cast<int>(z.mean.size()) != a.size()) {
    throw std::invalid_argument(
        "quadform moments: mean length does not match matrix dimension");
  }
  const double c = z.cov_scale;
  QuadformMoments out;
  out.mean = c * a.trace() + mean_quadform(a, z.mean);
  out.variance = c * c * a.frobenius_sq() + 2.0 * c * a_mean_norm_sq(a, z.mean);
  return out;
}

}  // namespace

QuadformMoments quadform_moments_det(const HermitianMatrix& a,
                                     const GaussianVectorStats& z) {
  return moments_from_matrix(a, z);
}

QuadformMoments quadform_moments_stoch(const HermitianMatrix& expected_s,
                                       const GaussianVectorStats& z) {
  // Only E[S] enters: the matrix's own variability is not modeled.
  return moments_from_matrix(expected_s, z);
}

HermitianMatrix expected_outer(const ChannelParams& p) {
  validate(p);
  const int n = p.n_antennas;
  const double k = p.k_factor;
  const double los_scale = p.beta * k / (k + 1.0);
  const double diffuse = p.beta / (k + 1.0);
  const std::vector<cplx> a = steering_vector(p.theta, n);
  std::vector<cplx> entries(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      cplx e = los_scale * a[r] * std::conj(a[c]);
      if (r == c) e += diffuse;
      entries[static_cast<size_t>(r) * n + c] = e;
    }
  }
  return HermitianMatrix(std::move(entries), n);
}

HermitianMatrix expected_projector(const ChannelParams& p) {
  const double inv_power_mean = inverse_gamma_mean(power_surrogate(p));
  const HermitianMatrix outer = expected_outer(p);
  std::vector<cplx> entries = outer.entries();
  for (cplx& e : entries) e *= inv_power_mean;
  return HermitianMatrix(std::move(entries), outer.size());
}

GammaSurrogate projected_power_surrogate(const ChannelParams& user_i,
                                         const ChannelParams& user_j) {
  if (user_i.n_antennas != user_j.n_antennas) {
    throw std::invalid_argument(
        "projected_power_surrogate: antenna counts must match");
  }
  const HermitianMatrix projector = expected_projector(user_j);
  const GaussianVectorStats stats = mean_and_cov(user_i);
  const QuadformMoments mom = quadform_moments_stoch(projector, stats);
  return gamma_from_moments(mom.mean, mom.variance);
}

}  // namespace qdsim
