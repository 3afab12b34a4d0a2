// SPDX-License-Identifier: Apache-2.0
//
// Line-of-sight geometry and per-user channel description for a uniform
// linear array: steering vectors, per-entry Gaussian moments, exact
// moment-matched surrogates for the received power, and channel sampling.

#pragma once

#include <complex>
#include <vector>

#include "qdsim/dist.hpp"
#include "qdsim/rng.hpp"

namespace qdsim {

using cplx = std::complex<double>;

// One user's channel: average gain beta > 0, line-of-sight ratio K >= 0,
// departure angle theta in (-pi/2, pi/2] radians, antennas N >= 2.
struct ChannelParams {
  double beta = 1.0;
  double k_factor = 0.0;
  double theta = 0.0;
  int n_antennas = 4;
};

// Throws std::invalid_argument naming the offending field.
void validate(const ChannelParams& p);

// Steering vector entry n (0-based): exp(-i * pi * n * sin(theta)).
cplx steering_entry(double theta, int n);
std::vector<cplx> steering_vector(double theta, int n_antennas);

// Per-entry Gaussian moments of the channel vector.  Entry n has
// independent real and imaginary components with common variance
// `var_component` and means (mean_re[n], mean_im[n]).
struct ChannelMoments {
  std::vector<double> mean_re;
  std::vector<double> mean_im;
  double var_component = 0.0;
};
ChannelMoments channel_moments(const ChannelParams& p);

// Exact gamma fit to the squared norm of the channel vector: each entry's
// squared magnitude is gamma-fitted from its exact first two moments and
// the per-entry fits are combined by moment-matching the sum.
GammaSurrogate power_surrogate(const ChannelParams& p);

// Draw one channel vector (2N normals through the sequential adapter).
std::vector<cplx> sample_channel(const ChannelParams& p,
                                 NormalStream& stream);

}  // namespace qdsim
