// SPDX-License-Identifier: Apache-2.0

#include "qdsim/specfn.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#if defined(__GLIBC__)
// Re-entrant variant; avoids the signgam global that plain lgamma writes.
extern "C" double lgamma_r(double, int*);
#endif

namespace qdsim {

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "ln_gamma: requires x > 0, got " << x;
    throw std::domain_error(os.str());
  }
#if defined(__GLIBC__)
  int sign = 0;
  return lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double ln_beta(double a, double b) {
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double inc_beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-15;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  std::ostringstream os;
  os << "reg_inc_beta: continued fraction did not converge (a=" << a
     << ", b=" << b << ", x=" << x << ")";
  throw SeriesConvergenceError(os.str());
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << "reg_inc_beta: shape parameters must be positive (a=" << a
       << ", b=" << b << ")";
    throw std::domain_error(os.str());
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "reg_inc_beta: x must lie in [0, 1], got " << x;
    throw std::domain_error(os.str());
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double ln_front =
      a * std::log(x) + b * std::log1p(-x) - ln_beta(a, b);
  const double front = std::exp(ln_front);
  // The continued fraction converges fast only on one side of the mean;
  // use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * inc_beta_cf(a, b, x) / a;
  }
  return 1.0 - front * inc_beta_cf(b, a, 1.0 - x) / b;
}

namespace {

// Direct power series for 2F1; requires |z| < 1 for convergence.  Also
// terminates exactly when a or b is a nonpositive integer.
double series_2f1(double a, double b, double c, double z) {
  constexpr int kMaxTerms = 200000;
  constexpr double kEps = 1e-16;
  double term = 1.0;
  double sum = 1.0;
  int quiet = 0;
  for (int k = 0; k < kMaxTerms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (!std::isfinite(sum)) {
      std::ostringstream os;
      os << "gauss_2f1: series overflowed (a=" << a << ", b=" << b
         << ", c=" << c << ", z=" << z << ")";
      throw SeriesConvergenceError(os.str());
    }
    if (std::fabs(term) <= kEps * std::fabs(sum)) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
  }
  std::ostringstream os;
  os << "gauss_2f1: series did not converge within " << kMaxTerms
     << " terms (a=" << a << ", b=" << b << ", c=" << c << ", z=" << z
     << ")";
  throw SeriesConvergenceError(os.str());
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
  if (c <= 0.0 && c == std::floor(c)) {
    std::ostringstream os;
    os << "gauss_2f1: c must not be zero or a negative integer, got " << c;
    throw std::domain_error(os.str());
  }
  if (!(z <= 0.0)) {
    std::ostringstream os;
    os << "gauss_2f1: supported domain is z <= 0, got " << z;
    throw std::domain_error(os.str());
  }
  if (z == 0.0) return 1.0;
  // The raw series alternates for z < 0 and can cancel catastrophically
  // when a*|z| is large.  The Pfaff transformation z -> z/(z-1) maps
  // z < 0 into (0, 1), where the transformed series has same-sign terms
  // whenever its replaced parameter (c-b or c-a) is nonnegative, so it
  // is applied for every negative argument.  Of the two variants, prefer
  // one with a nonnegative replaced parameter; fall back to the smaller
  // growth product when both are negative.
  const double u = z / (z - 1.0);
  const double p_keep_a = c - b;
  const double p_keep_b = c - a;
  bool keep_a;
  if ((p_keep_a >= 0.0) != (p_keep_b >= 0.0)) {
    keep_a = p_keep_a >= 0.0;
  } else {
    keep_a = std::fabs(a * p_keep_a) <= std::fabs(b * p_keep_b);
  }
  if (keep_a) {
    return std::pow(1.0 - z, -a) * series_2f1(a, p_keep_a, c, u);
  }
  return std::pow(1.0 - z, -b) * series_2f1(p_keep_b, b, c, u);
}

}  // namespace qdsim
