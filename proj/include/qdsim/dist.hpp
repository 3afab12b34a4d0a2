// SPDX-License-Identifier: Apache-2.0
//
// Gamma moment-matching surrogates and the distributions derived from
// them: inverse-gamma moments and the ratio-of-independent-gammas
// (beta-prime style) density and survival function.

#pragma once

#include <stdexcept>

namespace qdsim {

// Thrown when a distribution moment requires a shape parameter larger
// than the one supplied (e.g. inverse-gamma variance needs shape > 2).
class ShapeTooSmallError : public std::domain_error {
 public:
  explicit ShapeTooSmallError(const std::string& what)
      : std::domain_error(what) {}
};

// Gamma distribution in shape/scale parameterization.
struct GammaSurrogate {
  double shape = 0.0;  // k > 0
  double scale = 0.0;  // theta > 0

  double mean() const { return shape * scale; }
  double variance() const { return shape * scale * scale; }
};

// Fit a gamma distribution to a prescribed mean and variance:
//   shape = mean^2 / var,  scale = var / mean.
// Requires mean > 0 and var > 0.
GammaSurrogate gamma_from_moments(double mean, double var);

struct SquaredMagnitudeMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Moments of the square of a single Gaussian component X = (s z + m)^2,
// z standard normal, s^2 = var_component:
//   E[X] = var + m^2,  V[X] = 2 var (var + 2 m^2).
SquaredMagnitudeMoments squared_component_moments(double mean,
                                                  double var_component);

// Moments of the squared magnitude of a complex Gaussian entry whose real
// and imaginary parts are independent components with common variance:
// the sum of the two component moments.
SquaredMagnitudeMoments squared_gaussian_moments(double mean_re,
                                                 double mean_im,
                                                 double var_component);

// Gamma fit to a sum of independent gamma-fitted terms, matching the sum's
// exact mean and variance.
GammaSurrogate match_gamma_sum(const GammaSurrogate* terms, int count);

// E[1/X] for X ~ Gamma(shape, scale) = 1 / ((shape - 1) scale).
// Requires shape > 1; ShapeTooSmallError otherwise.
double inverse_gamma_mean(const GammaSurrogate& g);

// Mean and variance of 1/X; the variance requires shape > 2,
// ShapeTooSmallError otherwise.
struct InverseGammaMoments {
  double mean = 0.0;
  double variance = 0.0;
};
InverseGammaMoments inverse_gamma_moments(const GammaSurrogate& g);

// Ratio V / W of independent gammas V ~ numerator, W ~ denominator.
struct BetaPrimeSurrogate {
  GammaSurrogate numerator;
  GammaSurrogate denominator;
};

// Density of the ratio at x > 0.
double beta_prime_pdf(const BetaPrimeSurrogate& d, double x);

// Survival function P[V / W >= q], q >= 0.  Evaluated through the
// regularized incomplete beta function.
double beta_prime_sf(const BetaPrimeSurrogate& d, double q);

// Same survival function expressed through 2F1; used as an internal
// cross-check of the incomplete-beta route.
double beta_prime_sf_hyp(const BetaPrimeSurrogate& d, double q);

}  // namespace qdsim
