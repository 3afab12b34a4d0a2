// SPDX-License-Identifier: Apache-2.0

#include "qdsim/qd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdsim/quadform.hpp"
#include "qdsim/specfn.hpp"

namespace qdsim {

void validate(const QdScenario& s) {
  validate(s.user_i);
  validate(s.user_j);
  if (s.user_i.n_antennas != s.user_j.n_antennas) {
    throw std::invalid_argument("scenario: antenna counts must match");
  }
  if (!(s.rate_i > 0.0) || !(s.rate_j > 0.0)) {
    throw std::invalid_argument("scenario: target rates must be positive");
  }
}

double q_threshold(double cos2, double rate_i, double rate_j) {
  if (!(cos2 > 0.0 && cos2 <= 1.0)) {
    std::ostringstream os;
    os << "q_threshold: alignment must lie in (0, 1], got " << cos2;
    throw std::domain_error(os.str());
  }
  if (!(rate_i > 0.0) || !(rate_j > 0.0)) {
    throw std::domain_error("q_threshold: rates must be positive");
  }
  // Algebraically (1 + r_i)/c - r_i c / (1 + r_j (1 - c))^2; rearranged
  // through d^2 - c^2 = (1 - c)(1 + r_j)(d + c) so the two terms cancel
  // without rounding and q(1) is exactly 1 for every rate pair.
  const double m = 1.0 - cos2;
  const double denom = 1.0 + rate_j * m;
  return 1.0 / cos2 + rate_i * m * (1.0 + rate_j) * (denom + cos2) /
                          (cos2 * denom * denom);
}

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

struct PairSurrogates {
  GammaSurrogate power_i;       // W
  GammaSurrogate power_j;       // S
  GammaSurrogate projected_i;   // V
};

PairSurrogates build_surrogates(const QdScenario& s) {
  validate(s);
  PairSurrogates out;
  out.power_i = power_surrogate(s.user_i);
  out.power_j = power_surrogate(s.user_j);
  if (!(out.power_i.shape > 2.0) || !(out.power_j.shape > 2.0)) {
    std::ostringstream os;
    os << "qd probability: power-surrogate shapes must exceed 2 (got "
       << out.power_i.shape << " and " << out.power_j.shape << ")";
    throw ShapeTooSmallError(os.str());
  }
  out.projected_i = projected_power_surrogate(s.user_i, s.user_j);
  return out;
}

}  // namespace

QdAnalyticResult qd_prob_quadrature(const QdScenario& s,
                                    const QuadratureSpec& spec) {
  const PairSurrogates sur = build_surrogates(s);
  const BetaPrimeSurrogate gain_ratio{sur.power_i, sur.power_j};
  const BetaPrimeSurrogate alignment{sur.projected_i, sur.power_i};

  const auto integrand = [&](double th) {
    return beta_prime_sf(gain_ratio, q_threshold(th, s.rate_i, s.rate_j)) *
           beta_prime_pdf(alignment, th);
  };
  const QuadratureResult qr = integrate(integrand, 0.0, 1.0, spec);

  QdAnalyticResult out;
  out.probability = clamp01(qr.value);
  out.method = QdMethod::kQuadrature;
  out.series_terms_used = 0;
  out.error_bound = qr.error_bound;
  // The alignment surrogate has support beyond 1; its mass there is
  // discarded (not renormalized) and reported here.
  out.alignment_tail_mass = beta_prime_sf(alignment, 1.0);
  return out;
}

namespace {

// Shared summation loop for both series forms.  `g_term` supplies the
// k-dependent integral factor; `prefactor` the constant one.  Terms are
// prefactor * c_k * (-rho)^k * g_term(k) with the standard Pochhammer
// coefficient c_k = (a+b)_k (b)_k / ((b+1)_k k!) for a = shape_w,
// b = shape_s.
struct SeriesSum {
  double value = 0.0;
  int terms_used = 0;
  double last_term = 0.0;
};

template <typename GTerm>
SeriesSum sum_series(double shape_w, double shape_s, double rho,
                     double prefactor, int max_terms, double tol,
                     const GTerm& g_term) {
  if (max_terms < 1) {
    throw std::domain_error("qd series: max_terms must be at least 1");
  }
  double sum = 0.0;
  double coeff = 1.0;  // c_k * rho^k, updated multiplicatively
  double scale = 0.0;
  double prev_abs = 0.0;
  int quiet = 0;
  int growth_streak = 0;
  for (int k = 0; k < max_terms; ++k) {
    const double magnitude = prefactor * coeff * g_term(k);
    const double term = (k % 2 == 0) ? magnitude : -magnitude;
    sum += term;

    const double abs_term = std::fabs(term);
    if (k == 0) scale = abs_term;

    if (abs_term > 1e250) {
      std::ostringstream os;
      os << "qd series: terms overflowed before convergence (scale ratio "
         << rho << ")";
      throw SeriesDivergenceError(os.str(), rho);
    }
    // The term-magnitude ratio tends to rho, so with rho >= 1 sustained
    // growth means the alternating sum cannot converge.  With rho < 1 a
    // long transient growth phase is legitimate and is left alone.
    growth_streak = (k > 0 && abs_term > prev_abs) ? growth_streak + 1 : 0;
    if (rho >= 1.0 && growth_streak >= 8) {
      std::ostringstream os;
      os << "qd series: diverges, scale ratio " << rho
         << " >= 1 with growing terms";
      throw SeriesDivergenceError(os.str(), rho);
    }
    prev_abs = abs_term;

    if (abs_term <= tol * std::max(std::fabs(sum), scale)) {
      if (++quiet >= 2) {
        return {sum, k + 1, abs_term};
      }
    } else {
      quiet = 0;
    }

    coeff *= (shape_w + shape_s + k) * (shape_s + k) /
             ((shape_s + 1.0 + k) * (k + 1.0)) * rho;
  }
  std::ostringstream os;
  os << "qd series: did not converge within " << max_terms
     << " terms (scale ratio " << rho << ", last |term| " << prev_abs
     << ")";
  throw SeriesConvergenceError(os.str());
}

}  // namespace

QdAnalyticResult qd_prob_series(const QdScenario& s, int max_terms,
                                double tol, const QuadratureSpec& spec) {
  const PairSurrogates sur = build_surrogates(s);
  const BetaPrimeSurrogate alignment{sur.projected_i, sur.power_i};
  const double shape_w = sur.power_i.shape;
  const double shape_s = sur.power_j.shape;
  const double rho = sur.power_i.scale / sur.power_j.scale;

  // Exchanging summation and integration carries the gain-ratio survival
  // function's own normalization into the prefactor.
  const double prefactor = std::exp(shape_s * std::log(rho) -
                                    std::log(shape_s) -
                                    ln_beta(shape_w, shape_s));
  const auto g_term = [&](int k) {
    const auto weighted = [&](double th) {
      return std::pow(q_threshold(th, s.rate_i, s.rate_j),
                      -(k + shape_s)) *
             beta_prime_pdf(alignment, th);
    };
    return integrate(weighted, 0.0, 1.0, spec).value;
  };

  const SeriesSum sum = sum_series(shape_w, shape_s, rho, prefactor,
                                   max_terms, tol, g_term);

  QdAnalyticResult out;
  out.probability = clamp01(sum.value);
  out.method = QdMethod::kSeries;
  out.series_terms_used = sum.terms_used;
  out.error_bound = sum.last_term;
  out.alignment_tail_mass = beta_prime_sf(alignment, 1.0);
  return out;
}

double series_g_integral(int k, double rate_i, double rate_j, double shape,
                         const QuadratureSpec& spec) {
  if (k < 0) {
    throw std::domain_error("series_g_integral: k must be nonnegative");
  }
  if (!(shape > 0.0)) {
    throw std::domain_error("series_g_integral: shape must be positive");
  }
  const auto f = [&](double th) {
    return std::pow(q_threshold(th, rate_i, rate_j), -(k + shape));
  };
  return integrate(f, 0.0, 1.0, spec).value;
}

double qd_prob_series_literal(const QdScenario& s, int max_terms,
                              double tol, const QuadratureSpec& spec) {
  const PairSurrogates sur = build_surrogates(s);
  const double shape_w = sur.power_i.shape;
  const double shape_s = sur.power_j.shape;
  const double shape_v = sur.projected_i.shape;
  const double rho = sur.power_i.scale / sur.power_j.scale;
  const double prefactor =
      std::exp(-(shape_v + shape_w) *
               std::log1p(sur.power_i.scale / sur.projected_i.scale));
  const auto g_term = [&](int k) {
    return series_g_integral(k, s.rate_i, s.rate_j, shape_s, spec);
  };
  const SeriesSum sum = sum_series(shape_w, shape_s, rho, prefactor,
                                   max_terms, tol, g_term);
  return clamp01(sum.value);
}

PairwiseBound pairwise_lower_bound(const std::vector<ChannelParams>& users,
                                   const std::vector<double>& rates,
                                   const QuadratureSpec& spec) {
  if (users.size() < 2) {
    throw std::invalid_argument(
        "pairwise_lower_bound: requires at least two users");
  }
  if (rates.size() != users.size()) {
    throw std::invalid_argument(
        "pairwise_lower_bound: one rate per user required");
  }
  double total = 0.0;
  for (size_t i = 0; i < users.size(); ++i) {
    for (size_t j = i + 1; j < users.size(); ++j) {
      const QdScenario sc{users[i], users[j], rates[i], rates[j]};
      total += qd_prob_quadrature(sc, spec).probability;
    }
  }
  return {total, total > 1.0};
}

namespace {

void check_pair(const std::vector<cplx>& gi, const std::vector<cplx>& gj,
                const char* who) {
  if (gi.empty() || gi.size() != gj.size()) {
    std::ostringstream os;
    os << who << ": vectors must be nonempty and of equal length";
    throw std::invalid_argument(os.str());
  }
}

double norm_sq(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& e : v) s += std::norm(e);
  return s;
}

}  // namespace

double cos2_angle(const std::vector<cplx>& gi, const std::vector<cplx>& gj) {
  check_pair(gi, gj, "cos2_angle");
  const double wi = norm_sq(gi);
  const double wj = norm_sq(gj);
  if (wi == 0.0 || wj == 0.0) {
    throw std::invalid_argument("cos2_angle: zero vector");
  }
  cplx inner = 0.0;
  for (size_t n = 0; n < gi.size(); ++n) inner += std::conj(gj[n]) * gi[n];
  // Cauchy-Schwarz bounds the true value by 1; rounding can spill a few
  // ulp past it for near-parallel vectors.
  return clamp01(std::norm(inner) / (wi * wj));
}

bool qd_indicator(const std::vector<cplx>& gi, const std::vector<cplx>& gj,
                  double rate_i, double rate_j) {
  const double c2 = cos2_angle(gi, gj);
  if (c2 == 0.0) return false;  // threshold diverges: never degraded
  return q_threshold(c2, rate_i, rate_j) <= norm_sq(gi) / norm_sq(gj);
}

double dpc_power(const std::vector<cplx>& gi, const std::vector<cplx>& gj,
                 double rate_i, double rate_j) {
  check_pair(gi, gj, "dpc_power");
  const double wi = norm_sq(gi);
  const double wj = norm_sq(gj);
  if (wi == 0.0 || wj == 0.0) {
    throw std::invalid_argument("dpc_power: zero channel vector");
  }
  const double th = cos2_angle(gi, gj);
  // sin() applied to the squared cosine, exactly as the source formula
  // is written; see dpc_power_sin2 for the squared-sine reading.
  return rate_j / wj +
         (rate_i / wi) * (1.0 + rate_j) / (1.0 + rate_j * std::sin(th));
}

double dpc_power_sin2(const std::vector<cplx>& gi,
                      const std::vector<cplx>& gj, double rate_i,
                      double rate_j) {
  check_pair(gi, gj, "dpc_power");
  const double wi = norm_sq(gi);
  const double wj = norm_sq(gj);
  if (wi == 0.0 || wj == 0.0) {
    throw std::invalid_argument("dpc_power: zero channel vector");
  }
  const double th = cos2_angle(gi, gj);
  return rate_j / wj +
         (rate_i / wi) * (1.0 + rate_j) / (1.0 + rate_j * (1.0 - th));
}

}  // namespace qdsim
