#pragma once

#include <vector>

#include "gsvdlink/frame.hpp"
#include "gsvdlink/gsvd.hpp"

namespace gsvdlink {

enum class Scheme { gsvd, bd_mmse, mmse_eq, mmse_prec };
enum class Regime { one, two, three };
enum class StreamClass { private1, common, private2 };

/// Antenna-count regime: I when G < C < 2G, II when C <= G, III when C >= 2G.
/// The C == G boundary maps to II (structurally identical to I with no
/// private block), C == 2G to III.
Regime classify_regime(int bs_antennas, int user_antennas);

/// Per-stream routing: which detector output row carries the stream for each
/// user and with what effective diagonal gain. row == -1 means the user
/// cannot reach the stream.
struct StreamInfo {
  StreamClass cls = StreamClass::common;
  Complex gain1{0, 0};
  Complex gain2{0, 0};
  Index row1 = -1;
  Index row2 = -1;
};

/// A complete transmit/receive recipe: precoder, per-user linear detector
/// stage, power normalization and stream routing. Built once per channel
/// realization and shared read-only by workers.
struct TransceiverPlan {
  Scheme scheme = Scheme::gsvd;
  Regime regime = Regime::one;        // meaningful for the gsvd scheme
  Index streams_per_bin = 0;          // s
  MatrixXc precoder;                  // MNC x MNs, applied as x = (1/rho) P s
  MatrixXc d1, d2;                    // per-user linear detector stage
  double rho = 1.0;                   // rho^2 = ||P||_F^2 / (MN C)
  std::vector<StreamInfo> stream_map; // length MNs

  Index total_streams() const { return static_cast<Index>(stream_map.size()); }
};

/// GSVD transceiver (all three regimes). Regimes I and II use P = (V^H)^-1;
/// regime III uses the unitary-factored right inverse of V^H, which
/// coincides with the ZF form V (V^H V)^-1.
TransceiverPlan build_gsvd_plan(const MatrixXc& h1, const MatrixXc& h2,
                                int bs_antennas, int user_antennas,
                                const FrameParams& params);

/// Regime III precoder built literally from the unitary decomposition
/// V^H = [W^H R, 0] Q^H, exposed so the two routes can be cross-checked.
MatrixXc regime3_factored_precoder(const MatrixXc& v);
/// Regime III ZF-equivalent form P = V (V^H V)^-1.
MatrixXc regime3_zf_precoder(const MatrixXc& v);

/// Block-diagonalization baseline: each user's streams live in the null
/// space of the other user's channel, followed by a per-user linear MMSE
/// equalizer. Requires C > G.
TransceiverPlan bd_mmse_plan(const MatrixXc& h1, const MatrixXc& h2,
                             int bs_antennas, int user_antennas,
                             const FrameParams& params, double noise_var);

/// MMSE (regularized ZF) transmit precoding baseline for C >= 2G:
/// P = H^H (H H^H + alpha I)^-1 with alpha = noise_var * 2G / C.
TransceiverPlan mmse_precoder_plan(const MatrixXc& h1, const MatrixXc& h2,
                                   int bs_antennas, int user_antennas,
                                   const FrameParams& params,
                                   double noise_var);

/// Unprecoded broadcast with a per-user linear MMSE equalizer, for C <= G.
TransceiverPlan mmse_eq_plan(const MatrixXc& h1, const MatrixXc& h2,
                             int bs_antennas, int user_antennas,
                             const FrameParams& params, double noise_var);

/// Per-stream scalar MMSE: s_k = conj(g_k) r_k / (|g_k|^2 + noise_var).
/// Streams with g_k == 0 return 0.
VectorXc single_tap_mmse_detect(const VectorXc& r, const VectorXc& gains,
                                double noise_var);

/// Linear MMSE equalizer output (H^H H + noise_var I)^-1 H^H y.
VectorXc mmse_equalize(const MatrixXc& h, const VectorXc& y, double noise_var);

/// Runs the plan's receive chain for one user (1 or 2) on the received
/// vector y. Returns one symbol estimate per stream; unreachable streams
/// are zero.
VectorXc detect_symbols(const TransceiverPlan& plan, int user,
                        const VectorXc& y, double noise_var);

}  // namespace gsvdlink
