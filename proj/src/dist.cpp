// SPDX-License-Identifier: Apache-2.0

#include "qdsim/dist.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qdsim/specfn.hpp"

namespace qdsim {

GammaSurrogate gamma_from_moments(double mean, double var) {
  if (!(mean > 0.0)) {
    std::ostringstream os;
    os << "gamma_from_moments: mean must be positive, got " << mean;
    throw std::domain_error(os.str());
  }
  if (!(var > 0.0)) {
    std::ostringstream os;
    os << "gamma_from_moments: variance must be positive, got " << var;
    throw std::domain_error(os.str());
  }
  return {mean * mean / var, var / mean};
}

SquaredMagnitudeMoments squared_component_moments(double mean,
                                                  double var_component) {
  if (!(var_component >= 0.0)) {
    throw std::domain_error(
        "squared_component_moments: variance must be nonnegative");
  }
  const double m2 = mean * mean;
  return {var_component + m2,
          2.0 * var_component * (var_component + 2.0 * m2)};
}

SquaredMagnitudeMoments squared_gaussian_moments(double mean_re,
                                                 double mean_im,
                                                 double var_component) {
  const SquaredMagnitudeMoments re =
      squared_component_moments(mean_re, var_component);
  const SquaredMagnitudeMoments im =
      squared_component_moments(mean_im, var_component);
  return {re.mean + im.mean, re.variance + im.variance};
}

GammaSurrogate match_gamma_sum(const GammaSurrogate* terms, int count) {
  if (terms == nullptr || count < 1) {
    throw std::domain_error("match_gamma_sum: requires at least one term");
  }
  double mean = 0.0;
  double var = 0.0;
  for (int i = 0; i < count; ++i) {
    mean += terms[i].mean();
    var += terms[i].variance();
  }
  return gamma_from_moments(mean, var);
}

double inverse_gamma_mean(const GammaSurrogate& g) {
  if (!(g.shape > 1.0)) {
    std::ostringstream os;
    os << "inverse_gamma_mean: requires shape > 1, got " << g.shape;
    throw ShapeTooSmallError(os.str());
  }
  return 1.0 / ((g.shape - 1.0) * g.scale);
}

InverseGammaMoments inverse_gamma_moments(const GammaSurrogate& g) {
  if (!(g.shape > 2.0)) {
    std::ostringstream os;
    os << "inverse_gamma_moments: variance requires shape > 2, got "
       << g.shape;
    throw ShapeTooSmallError(os.str());
  }
  const double mean = inverse_gamma_mean(g);
  const double km1 = g.shape - 1.0;
  const double var =
      1.0 / (km1 * km1 * (g.shape - 2.0) * g.scale * g.scale);
  return {mean, var};
}

namespace {

void check_surrogate(const BetaPrimeSurrogate& d, const char* who) {
  if (!(d.numerator.shape > 0.0) || !(d.numerator.scale > 0.0) ||
      !(d.denominator.shape > 0.0) || !(d.denominator.scale > 0.0)) {
    std::ostringstream os;
    os << who << ": gamma parameters must be positive";
    throw std::domain_error(os.str());
  }
}

}  // namespace

double beta_prime_pdf(const BetaPrimeSurrogate& d, double x) {
  check_surrogate(d, "beta_prime_pdf");
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << "beta_prime_pdf: x must be nonnegative, got " << x;
    throw std::domain_error(os.str());
  }
  const double a = d.numerator.shape;
  const double b = d.denominator.shape;
  const double ta = d.numerator.scale;
  const double tb = d.denominator.scale;
  if (x == 0.0) {
    if (a > 1.0) return 0.0;
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    // a == 1: finite limit, fall through with the x^(a-1) factor gone.
    return std::exp(-(a + b) * std::log(1.0 / tb) - a * std::log(ta) -
                    b * std::log(tb) - ln_beta(a, b));
  }
  const double ln_pdf = (a - 1.0) * std::log(x) -
                        (a + b) * std::log(x / ta + 1.0 / tb) -
                        a * std::log(ta) - b * std::log(tb) - ln_beta(a, b);
  return std::exp(ln_pdf);
}

double beta_prime_sf(const BetaPrimeSurrogate& d, double q) {
  check_surrogate(d, "beta_prime_sf");
  if (!(q >= 0.0)) {
    std::ostringstream os;
    os << "beta_prime_sf: q must be nonnegative, got " << q;
    throw std::domain_error(os.str());
  }
  if (q == 0.0) return 1.0;
  // With X = V/scale_V and Y = W/scale_W unit-scale gammas,
  // V/W >= q  <=>  X/(X+Y) >= c/(1+c) with c = q scale_W / scale_V, and
  // X/(X+Y) is Beta(shape_V, shape_W); by symmetry the survival mass is
  // I at 1/(1+c) with the shapes swapped.
  const double c = q * d.denominator.scale / d.numerator.scale;
  return reg_inc_beta(d.denominator.shape, d.numerator.shape,
                      1.0 / (1.0 + c));
}

double beta_prime_sf_hyp(const BetaPrimeSurrogate& d, double q) {
  check_surrogate(d, "beta_prime_sf_hyp");
  if (!(q > 0.0)) {
    std::ostringstream os;
    os << "beta_prime_sf_hyp: requires q > 0, got " << q;
    throw std::domain_error(os.str());
  }
  const double an = d.numerator.shape;
  const double ad = d.denominator.shape;
  const double tn = d.numerator.scale;
  const double td = d.denominator.scale;
  const double ratio = tn / td;
  const double ln_pref = -ad * std::log(q) + ad * std::log(ratio) -
                         std::log(ad) - ln_beta(an, ad);
  const double hyp =
      gauss_2f1(an + ad, ad, ad + 1.0, -ratio / q);
  return std::exp(ln_pref) * hyp;
}

}  // namespace qdsim
