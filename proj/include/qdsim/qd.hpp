// SPDX-License-Identifier: Apache-2.0
//
// Analytic quasi-degradation probability for a two-user downlink pair:
// the alignment threshold function, the quadrature route (survival
// function of the gain ratio integrated against the alignment density),
// an exchanged-summation series route valid when the scale ratio is
// below one, and the superposition power benchmark.

#pragma once

#include <stdexcept>
#include <string>

#include "qdsim/channel.hpp"
#include "qdsim/dist.hpp"
#include "qdsim/quadrature.hpp"

namespace qdsim {

// A two-user scenario: channels plus target rates r > 0 (linear units).
struct QdScenario {
  ChannelParams user_i;
  ChannelParams user_j;
  double rate_i = 1.0;
  double rate_j = 1.0;
};

void validate(const QdScenario& s);

// Threshold on the gain ratio as a function of the squared alignment
// cosine `c2` in (0, 1]:
//   q(c2) = (1 + r_i) / c2 - r_i * c2 / (1 + r_j * (1 - c2))^2.
// Strictly decreasing in c2 with q(1) = 1.
double q_threshold(double cos2, double rate_i, double rate_j);

enum class QdMethod { kQuadrature, kSeries };

struct QdAnalyticResult {
  double probability = 0.0;
  QdMethod method = QdMethod::kQuadrature;
  int series_terms_used = 0;        // series route only
  double error_bound = 0.0;         // quadrature bound / last series term
  double alignment_tail_mass = 0.0; // surrogate mass above cos2 = 1
};

// Quadrature route: P = integral over c2 in (0, 1) of
// SF_ratio(q(c2)) * pdf_alignment(c2), with the alignment surrogate's
// mass above 1 reported (not renormalized) and the result clamped to
// [0, 1].
QdAnalyticResult qd_prob_quadrature(const QdScenario& s,
                                    const QuadratureSpec& spec = {});

// Thrown by the series route when the exchanged summation does not
// converge (scale ratio >= 1) or its terms overflow.
class SeriesDivergenceError : public std::runtime_error {
 public:
  SeriesDivergenceError(const std::string& what, double scale_ratio)
      : std::runtime_error(what), scale_ratio_(scale_ratio) {}
  double scale_ratio() const { return scale_ratio_; }

 private:
  double scale_ratio_;
};

// Series route: exchanging summation and integration yields
//   P = A * sum_k c_k (-rho)^k * G(k),
// rho the numerator/denominator scale ratio of the gain-ratio surrogate,
// c_k a ratio of Pochhammer symbols and G(k) the alignment-density
// integral of q(c2)^(-(k + shape_den)).  Requires rho < 1.
QdAnalyticResult qd_prob_series(const QdScenario& s, int max_terms = 2000,
                                double tol = 1e-10,
                                const QuadratureSpec& spec = {});

// Alignment-free inner integral of the series route at term k, exposed
// for diagnostics: integral over c2 in (0,1) of q(c2)^(-(k + shape)).
double series_g_integral(int k, double rate_i, double rate_j, double shape,
                         const QuadratureSpec& spec = {});

// Literal transcription of the series as printed in its source, kept as
// a diagnostic; its prefactor uses the alignment-numerator scale rather
// than the one the exchanged summation produces, so it does not match
// the quadrature route.  Returns the clamped partial sum.
double qd_prob_series_literal(const QdScenario& s, int max_terms = 2000,
                              double tol = 1e-10,
                              const QuadratureSpec& spec = {});

// Union-style lower bound on the probability that at least one user pair
// is quasi-degraded: sum of pairwise probabilities over unordered pairs,
// with a flag when the sum exceeds one (bound vacuous).
struct PairwiseBound {
  double value = 0.0;
  bool saturated = false;
};
PairwiseBound pairwise_lower_bound(const std::vector<ChannelParams>& users,
                                   const std::vector<double>& rates,
                                   const QuadratureSpec& spec = {});

// Squared alignment cosine |g_i^H g_j|^2 / (||g_i||^2 ||g_j||^2).
double cos2_angle(const std::vector<cplx>& gi, const std::vector<cplx>& gj);

// Quasi-degradation test for one channel realization:
// q_threshold(cos2_angle(gi, gj)) <= ||gi||^2 / ||gj||^2.
bool qd_indicator(const std::vector<cplx>& gi, const std::vector<cplx>& gj,
                  double rate_i, double rate_j);

// Minimum total transmit power of the dirty-paper benchmark for one
// channel realization (encoding order: user j first).
double dpc_power(const std::vector<cplx>& gi, const std::vector<cplx>& gj,
                 double rate_i, double rate_j);

// Variant with the squared alignment sine (1 - cos2) in the cross term,
// kept for side-by-side comparison with the primary form, which applies
// sin() to the squared cosine itself.
double dpc_power_sin2(const std::vector<cplx>& gi,
                      const std::vector<cplx>& gj, double rate_i,
                      double rate_j);

}  // namespace qdsim
