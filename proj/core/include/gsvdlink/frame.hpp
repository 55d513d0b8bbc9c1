#pragma once

#include "gsvdlink/errors.hpp"
#include "gsvdlink/types.hpp"

namespace gsvdlink {

/// OTFS grid geometry: M delay bins x N Doppler bins plus the physical
/// constants everything else is derived from.
struct FrameParams {
  int delay_bins = 0;               ///< M
  int doppler_bins = 0;             ///< N
  double subcarrier_spacing_hz = 0; ///< delta_f
  double carrier_hz = 0;            ///< fc

  FrameParams() = default;
  FrameParams(int m, int n, double delta_f, double fc);

  int grid_size() const { return delay_bins * doppler_bins; }
  double bandwidth_hz() const { return delay_bins * subcarrier_spacing_hz; }
  double symbol_duration_s() const { return 1.0 / subcarrier_spacing_hz; }
  double frame_duration_s() const { return doppler_bins * symbol_duration_s(); }
};

/// One M x N delay-Doppler grid of complex symbols. Rows index delay l,
/// columns index Doppler k. The vector view is vec{X^T}: entry n = k + l*N.
class DdFrame {
 public:
  DdFrame(int delay_bins, int doppler_bins);
  explicit DdFrame(MatrixXc grid);

  static DdFrame from_vector(const VectorXc& x, const FrameParams& params);

  const MatrixXc& grid() const { return grid_; }
  MatrixXc& grid() { return grid_; }

  int delay_bins() const { return static_cast<int>(grid_.rows()); }
  int doppler_bins() const { return static_cast<int>(grid_.cols()); }

  VectorXc to_vector() const;

 private:
  MatrixXc grid_;
};

}  // namespace gsvdlink
