// SPDX-License-Identifier: Apache-2.0
//
// Scalar special functions used by the analytic pipeline: log-gamma,
// log-beta, the regularized incomplete beta function, and the Gauss
// hypergeometric function 2F1 on the negative real axis.

#pragma once

#include <stdexcept>

namespace qdsim {

// Thrown when an iterative expansion fails to converge within its
// iteration budget.
class SeriesConvergenceError : public std::runtime_error {
 public:
  explicit SeriesConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

// Natural log of the gamma function, x > 0.
double ln_gamma(double x);

// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a+b), a > 0, b > 0.
double ln_beta(double a, double b);

// Regularized incomplete beta function I_x(a, b) for a > 0, b > 0 and
// x in [0, 1].  Continued-fraction evaluation, accurate to ~1e-14.
double reg_inc_beta(double a, double b, double x);

// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0.  Evaluated by direct
// power series for moderate |z| and via the Pfaff transformation
// z -> z/(z-1) otherwise.  c must not be zero or a negative integer.
double gauss_2f1(double a, double b, double c, double z);

}  // namespace qdsim
