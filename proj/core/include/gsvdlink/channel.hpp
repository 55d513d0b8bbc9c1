#pragma once

#include <random>
#include <vector>

#include "gsvdlink/frame.hpp"

namespace gsvdlink {

enum class DelayUnit { seconds, bins };
enum class DopplerModel { jakes, uniform };

/// Tapped-delay-line power profile plus the mobility model. Mean tap powers
/// are normalized to unit total so the average channel energy per antenna
/// pair is 1.
struct PathProfile {
  std::vector<double> tap_delays;     ///< in delay_unit
  std::vector<double> tap_powers_db;  ///< mean power per tap, dB
  DelayUnit delay_unit = DelayUnit::bins;
  DopplerModel doppler_model = DopplerModel::jakes;
  double max_speed_kmh = 0.0;

  void validate() const;
  /// Linear tap powers normalized to sum to 1.
  std::vector<double> linear_powers() const;
};

/// One multipath draw: complex gain, integer delay bin and fractional
/// normalized Doppler per tap.
struct PathRealization {
  VectorXc gains;
  std::vector<int> delay_bins;
  VectorXd dopplers;  ///< normalized to Doppler-bin units, |k| <= k_max

  Index num_taps() const { return gains.size(); }
};

/// Maximum Doppler shift in Hz for a given speed (km/h) and carrier.
double max_doppler_hz(double v_kmh, double fc_hz);

/// Maximum normalized Doppler k_max = nu_max * Tf.
double max_normalized_doppler(const PathProfile& profile,
                              const FrameParams& params);

PathRealization draw_channel_realization(const PathProfile& profile,
                                         const FrameParams& params,
                                         std::mt19937_64& rng);

/// MN x MN circular time-domain operator sum_i h_i * Delta(k_i) * Pi^{l_i},
/// where Pi is the cyclic forward shift and Delta(k) = diag(exp(j2pi k n/MN)).
MatrixXc build_time_channel_matrix(const PathRealization& realization,
                                   const FrameParams& params);

/// Equivalent DD-domain channel H = Z * H_t * Z^H.
MatrixXc dd_channel_matrix(const PathRealization& realization,
                           const FrameParams& params);

/// Per-antenna-pair DD blocks and the assembled per-user block matrices.
struct MimoDdChannel {
  int bs_antennas = 0;    ///< C
  int user_antennas = 0;  ///< G
  /// blocks[(g * 2 + u) * C + c] is the MN x MN DD channel between BS
  /// antenna c and antenna g of user u (u in {0, 1}).
  std::vector<MatrixXc> blocks;
  MatrixXc h1;  ///< MNG x MNC
  MatrixXc h2;  ///< MNG x MNC

  const MatrixXc& block(int g, int u, int c) const;
};

/// Assembles H1 and H2 from a full G x 2 x C grid of realizations laid out as
/// realizations[(g * 2 + u) * C + c].
MimoDdChannel assemble_mimo_channel(
    const std::vector<PathRealization>& realizations,
    const FrameParams& params, int bs_antennas, int user_antennas);

/// Estimation-error model applied to the time-domain tap gains:
/// h_est = rho * h + eps with eps ~ CN(0, (1 - rho^2) * tap power).
/// rho == 1 returns the input untouched and consumes no randomness.
PathRealization corrupt_csi(const PathRealization& realization,
                            const PathProfile& profile, double rho,
                            std::mt19937_64& rng);

}  // namespace gsvdlink
