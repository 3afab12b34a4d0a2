// SPDX-License-Identifier: Apache-2.0
//
// Adaptive numerical integration over a finite interval using a
// Gauss-Kronrod 7/15 rule.  All rule nodes are interior, so integrands
// with integrable endpoint singularities are handled without special
// casing.  Intervals are kept in a worst-error-first heap and bisected
// until the summed error estimate meets tolerance.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace qdsim {

struct QuadratureSpec {
  double rel_tol = 1e-10;       // relative to the running integral estimate
  double abs_tol = 0.0;         // absolute floor; effective tol is the max
  int max_subdivisions = 200;   // bisection budget
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;     // summed per-interval error estimates
  int subdivisions = 0;
};

// Thrown when the subdivision budget is exhausted before the error bound
// meets tolerance.  Carries the best estimate so callers can decide
// whether to use it anyway.
class QuadratureBudgetError : public std::runtime_error {
 public:
  QuadratureBudgetError(const std::string& what, double estimate,
                        double error_bound)
      : std::runtime_error(what),
        estimate_(estimate),
        error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// Integrate f over [a, b] (a < b).  Throws QuadratureBudgetError on budget
// exhaustion and std::domain_error if f returns a non-finite value at a
// quadrature node.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureSpec& spec = {});

}  // namespace qdsim
