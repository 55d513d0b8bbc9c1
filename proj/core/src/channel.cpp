#include "gsvdlink/channel.hpp"

#include <cmath>

#include "gsvdlink/zak.hpp"

namespace gsvdlink {

void PathProfile::validate() const {
  if (tap_delays.empty() || tap_delays.size() != tap_powers_db.size()) {
    throw ConfigError("PathProfile: tap_delays and tap_powers_db must be "
                      "non-empty and the same length");
  }
  for (std::size_t i = 0; i < tap_delays.size(); ++i) {
    if (tap_delays[i] < 0) {
      throw ConfigError("PathProfile: tap delays must be non-negative");
    }
    if (i > 0 && tap_delays[i] <= tap_delays[i - 1]) {
      throw ConfigError("PathProfile: tap delays must be strictly ascending");
    }
  }
  if (max_speed_kmh < 0) {
    throw ConfigError("PathProfile: max_speed_kmh must be non-negative");
  }
}

std::vector<double> PathProfile::linear_powers() const {
  std::vector<double> p(tap_powers_db.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::pow(10.0, tap_powers_db[i] / 10.0);
    total += p[i];
  }
  for (double& v : p) {
    v /= total;
  }
  return p;
}

double max_doppler_hz(double v_kmh, double fc_hz) {
  if (v_kmh < 0) {
    throw ArgumentError("max_doppler_hz: speed must be non-negative");
  }
  if (!(fc_hz > 0)) {
    throw ArgumentError("max_doppler_hz: carrier frequency must be positive");
  }
  return (v_kmh / 3.6) * fc_hz / kLightSpeedMs;
}

double max_normalized_doppler(const PathProfile& profile,
                              const FrameParams& params) {
  return max_doppler_hz(profile.max_speed_kmh, params.carrier_hz) *
         params.frame_duration_s();
}

PathRealization draw_channel_realization(const PathProfile& profile,
                                         const FrameParams& params,
                                         std::mt19937_64& rng) {
  profile.validate();
  const std::vector<double> powers = profile.linear_powers();
  const double k_max = max_normalized_doppler(profile, params);
  const int m = params.delay_bins;

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  PathRealization r;
  const Index taps = static_cast<Index>(powers.size());
  r.gains.resize(taps);
  r.delay_bins.resize(taps);
  r.dopplers.resize(taps);
  for (Index i = 0; i < taps; ++i) {
    const double sigma = std::sqrt(powers[i] / 2.0);
    const double re = sigma * gauss(rng);
    const double im = sigma * gauss(rng);
    r.gains(i) = Complex(re, im);

    double bin_value = profile.tap_delays[i];
    if (profile.delay_unit == DelayUnit::seconds) {
      bin_value *= params.bandwidth_hz();
    }
    const int bin = static_cast<int>(std::lround(bin_value));
    if (bin >= m) {
      throw ConfigError("draw_channel_realization: tap delay exceeds M-1 "
                        "bins; aliasing is not permitted");
    }
    r.delay_bins[i] = bin;

    if (profile.doppler_model == DopplerModel::jakes) {
      r.dopplers(i) = k_max * std::cos(angle(rng));
    } else {
      std::uniform_real_distribution<double> uni(-k_max, k_max);
      r.dopplers(i) = k_max > 0 ? uni(rng) : 0.0;
    }
  }
  return r;
}

MatrixXc build_time_channel_matrix(const PathRealization& realization,
                                   const FrameParams& params) {
  const Index mn = params.grid_size();
  MatrixXc h = MatrixXc::Zero(mn, mn);
  for (Index i = 0; i < realization.num_taps(); ++i) {
    const int l = realization.delay_bins[i];
    const double k = realization.dopplers(i);
    const Complex gain = realization.gains(i);
    for (Index n = 0; n < mn; ++n) {
      const double phase = 2.0 * kPi * k * static_cast<double>(n) /
                           static_cast<double>(mn);
      h(n, (n - l + mn) % mn) +=
          gain * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return h;
}

MatrixXc dd_channel_matrix(const PathRealization& realization,
                           const FrameParams& params) {
  const MatrixXc z = dd_transform_matrix(params);
  return z * build_time_channel_matrix(realization, params) * z.adjoint();
}

const MatrixXc& MimoDdChannel::block(int g, int u, int c) const {
  return blocks.at(static_cast<std::size_t>((g * 2 + u) * bs_antennas + c));
}

MimoDdChannel assemble_mimo_channel(
    const std::vector<PathRealization>& realizations,
    const FrameParams& params, int bs_antennas, int user_antennas) {
  const int c_ant = bs_antennas;
  const int g_ant = user_antennas;
  if (c_ant < 1 || g_ant < 1) {
    throw ArgumentError("assemble_mimo_channel: antenna counts must be >= 1");
  }
  if (realizations.size() !=
      static_cast<std::size_t>(g_ant) * 2 * static_cast<std::size_t>(c_ant)) {
    throw ArgumentError(
        "assemble_mimo_channel: need a full G x 2 x C realization grid");
  }
  const Index mn = params.grid_size();
  const MatrixXc z = dd_transform_matrix(params);

  MimoDdChannel ch;
  ch.bs_antennas = c_ant;
  ch.user_antennas = g_ant;
  ch.blocks.reserve(realizations.size());
  for (const PathRealization& r : realizations) {
    ch.blocks.push_back(z * build_time_channel_matrix(r, params) *
                        z.adjoint());
  }
  ch.h1 = MatrixXc(mn * g_ant, mn * c_ant);
  ch.h2 = MatrixXc(mn * g_ant, mn * c_ant);
  for (int g = 0; g < g_ant; ++g) {
    for (int c = 0; c < c_ant; ++c) {
      ch.h1.block(g * mn, c * mn, mn, mn) = ch.block(g, 0, c);
      ch.h2.block(g * mn, c * mn, mn, mn) = ch.block(g, 1, c);
    }
  }
  return ch;
}

PathRealization corrupt_csi(const PathRealization& realization,
                            const PathProfile& profile, double rho,
                            std::mt19937_64& rng) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ArgumentError("corrupt_csi: rho must be in [0, 1]");
  }
  if (rho == 1.0) {
    return realization;
  }
  const std::vector<double> powers = profile.linear_powers();
  if (static_cast<Index>(powers.size()) != realization.num_taps()) {
    throw ArgumentError("corrupt_csi: profile does not match realization");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  PathRealization out = realization;
  for (Index i = 0; i < out.num_taps(); ++i) {
    const double sigma = std::sqrt((1.0 - rho * rho) * powers[i] / 2.0);
    const Complex eps(sigma * gauss(rng), sigma * gauss(rng));
    out.gains(i) = rho * realization.gains(i) + eps;
  }
  return out;
}

}  // namespace gsvdlink
