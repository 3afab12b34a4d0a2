// SPDX-License-Identifier: Apache-2.0

#include "qdsim/channel.hpp"

#include <cmath>
#include <sstream>

namespace qdsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate(const ChannelParams& p) {
  if (!(p.beta > 0.0)) {
    std::ostringstream os;
    os << "channel: beta must be positive, got " << p.beta;
    throw std::invalid_argument(os.str());
  }
  if (!(p.k_factor >= 0.0)) {
    std::ostringstream os;
    os << "channel: k_factor must be nonnegative, got " << p.k_factor;
    throw std::invalid_argument(os.str());
  }
  if (!(p.theta > -kPi / 2.0 && p.theta <= kPi / 2.0)) {
    std::ostringstream os;
    os << "channel: theta must lie in (-pi/2, pi/2] radians, got "
       << p.theta;
    throw std::invalid_argument(os.str());
  }
  if (p.n_antennas < 2) {
    std::ostringstream os;
    os << "channel: n_antennas must be at least 2, got " << p.n_antennas;
    throw std::invalid_argument(os.str());
  }
}

cplx steering_entry(double theta, int n) {
  const double phase = kPi * n * std::sin(theta);
  return {std::cos(phase), -std::sin(phase)};
}

std::vector<cplx> steering_vector(double theta, int n_antennas) {
  std::vector<cplx> a(n_antennas);
  for (int n = 0; n < n_antennas; ++n) a[n] = steering_entry(theta, n);
  return a;
}

ChannelMoments channel_moments(const ChannelParams& p) {
  validate(p);
  const double k = p.k_factor;
  const double los_scale = std::sqrt(p.beta * k / (k + 1.0));
  ChannelMoments m;
  m.mean_re.resize(p.n_antennas);
  m.mean_im.resize(p.n_antennas);
  m.var_component = p.beta / (2.0 * (k + 1.0));
  for (int n = 0; n < p.n_antennas; ++n) {
    const cplx a = steering_entry(p.theta, n);
    m.mean_re[n] = los_scale * a.real();
    m.mean_im[n] = los_scale * a.imag();
  }
  return m;
}

GammaSurrogate power_surrogate(const ChannelParams& p) {
  const ChannelMoments m = channel_moments(p);
  std::vector<GammaSurrogate> per_entry(p.n_antennas);
  for (int n = 0; n < p.n_antennas; ++n) {
    const SquaredMagnitudeMoments sm = squared_gaussian_moments(
        m.mean_re[n], m.mean_im[n], m.var_component);
    per_entry[n] = gamma_from_moments(sm.mean, sm.variance);
  }
  return match_gamma_sum(per_entry.data(), p.n_antennas);
}

std::vector<cplx> sample_channel(const ChannelParams& p,
                                 NormalStream& stream) {
  const ChannelMoments m = channel_moments(p);
  const double sigma = std::sqrt(m.var_component);
  std::vector<cplx> g(p.n_antennas);
  for (int n = 0; n < p.n_antennas; ++n) {
    const double z_re = stream.next();
    const double z_im = stream.next();
    g[n] = {sigma * z_re + m.mean_re[n], sigma * z_im + m.mean_im[n]};
  }
  return g;
}

}  // namespace qdsim
