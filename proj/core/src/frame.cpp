#include "gsvdlink/frame.hpp"

namespace gsvdlink {

FrameParams::FrameParams(int m, int n, double delta_f, double fc)
    : delay_bins(m), doppler_bins(n), subcarrier_spacing_hz(delta_f),
      carrier_hz(fc) {
  if (m < 1 || n < 1) {
    throw ArgumentError("FrameParams: delay/Doppler bin counts must be >= 1");
  }
  if (!(delta_f > 0) || !(fc > 0)) {
    throw ArgumentError("FrameParams: delta_f and fc must be positive");
  }
}

DdFrame::DdFrame(int delay_bins, int doppler_bins)
    : grid_(MatrixXc::Zero(delay_bins, doppler_bins)) {
  if (delay_bins < 1 || doppler_bins < 1) {
    throw ArgumentError("DdFrame: grid dimensions must be >= 1");
  }
}

DdFrame::DdFrame(MatrixXc grid) : grid_(std::move(grid)) {
  if (grid_.rows() < 1 || grid_.cols() < 1) {
    throw ArgumentError("DdFrame: grid dimensions must be >= 1");
  }
}

DdFrame DdFrame::from_vector(const VectorXc& x, const FrameParams& params) {
  if (x.size() != params.grid_size()) {
    throw ShapeError("DdFrame::from_vector: vector length != M*N");
  }
  const int m = params.delay_bins;
  const int n = params.doppler_bins;
  MatrixXc grid(m, n);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < n; ++k) {
      grid(l, k) = x(k + static_cast<Index>(l) * n);
    }
  }
  return DdFrame(std::move(grid));
}

VectorXc DdFrame::to_vector() const {
  const int m = delay_bins();
  const int n = doppler_bins();
  VectorXc x(static_cast<Index>(m) * n);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < n; ++k) {
      x(k + static_cast<Index>(l) * n) = grid_(l, k);
    }
  }
  return x;
}

}  // namespace gsvdlink
