#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsvdlink/channel.hpp"
#include "gsvdlink/transceiver.hpp"

namespace gsvdlink {

/// Scheme selector for experiments. `awgn` is a diagnostic mode that bypasses
/// precoding and the channel entirely (unit-gain streams in white noise),
/// used to calibrate the BER counting chain against the closed form.
enum class SchemeChoice { gsvd, bd_mmse, mmse_eq, mmse_prec, awgn };

const char* scheme_name(SchemeChoice scheme);
const char* stream_class_name(StreamClass cls);

struct ExperimentConfig {
  FrameParams frame;
  int bs_antennas = 1;    ///< C
  int user_antennas = 1;  ///< G
  SchemeChoice scheme = SchemeChoice::gsvd;
  std::vector<double> snr_db;
  int frames_per_snr = 1;
  std::uint64_t seed = 1;
  double csi_rho = 1.0;
  PathProfile profile;
  int threads = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

struct BerRecord {
  std::string scheme;
  int user = 0;
  std::string stream_class;
  int stream_idx = 0;  ///< per-DD-bin stream index, 0 = best-sorted first
  double snr_db = 0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  double ber = 0;
  double ci_low = 0;   ///< Wilson 95% interval
  double ci_high = 0;
};

struct Interval {
  double low = 0;
  double high = 0;
};

/// Wilson score interval at 95% confidence.
Interval wilson_interval(std::uint64_t errors, std::uint64_t bits);

/// Structural stream layout for a scheme/antenna combination: class and
/// per-user reachability of every global stream, independent of the channel
/// draw.
struct StreamLayout {
  std::vector<StreamClass> cls;
  std::vector<bool> reach1;
  std::vector<bool> reach2;

  Index total() const { return static_cast<Index>(cls.size()); }
};
StreamLayout stream_layout(SchemeChoice scheme, int bs_antennas,
                           int user_antennas, Index grid_size);

/// Deterministic per-frame substream seed; independent of worker count.
std::uint64_t derive_substream_seed(std::uint64_t master, std::uint64_t snr_idx,
                                    std::uint64_t frame_idx);

struct FrameErrorCounts {
  std::vector<std::uint64_t> user1;  ///< bit errors per global stream
  std::vector<std::uint64_t> user2;
};

/// One transmit -> channel -> detect pass: random bits on every stream,
/// propagation through the true channel, per-stream hard-decision error
/// counts for each user.
FrameErrorCounts simulate_frame(const TransceiverPlan& plan,
                                const MatrixXc& h1, const MatrixXc& h2,
                                double noise_var, std::mt19937_64& rng);

/// Full Monte Carlo sweep: fresh channel per frame (block fading), fixed
/// frame budget per SNR point, deterministic for a given seed regardless of
/// thread count.
std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& config);

}  // namespace gsvdlink
