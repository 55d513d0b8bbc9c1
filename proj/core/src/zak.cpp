#include "gsvdlink/zak.hpp"

#include <cmath>

namespace gsvdlink {

VectorXc dzt_modulate(const DdFrame& frame, const FrameParams& params) {
  const int m = params.delay_bins;
  const int n = params.doppler_bins;
  if (frame.delay_bins() != m || frame.doppler_bins() != n) {
    throw ShapeError("dzt_modulate: frame dimensions do not match params");
  }
  const MatrixXc& x = frame.grid();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  VectorXc s(static_cast<Index>(m) * n);
  for (int mm = 0; mm < n; ++mm) {
    for (int l = 0; l < m; ++l) {
      Complex acc(0, 0);
      for (int k = 0; k < n; ++k) {
        const double phase = 2.0 * kPi * mm * k / n;
        acc += x(l, k) * Complex(std::cos(phase), std::sin(phase));
      }
      s(l + static_cast<Index>(mm) * m) = scale * acc;
    }
  }
  return s;
}

DdFrame dzt_demodulate(const VectorXc& samples, const FrameParams& params) {
  const int m = params.delay_bins;
  const int n = params.doppler_bins;
  if (samples.size() != static_cast<Index>(m) * n) {
    throw ShapeError("dzt_demodulate: sample vector length != M*N");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  MatrixXc grid(m, n);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < n; ++k) {
      Complex acc(0, 0);
      for (int mm = 0; mm < n; ++mm) {
        const double phase = -2.0 * kPi * mm * k / n;
        acc += samples(l + static_cast<Index>(mm) * m) *
               Complex(std::cos(phase), std::sin(phase));
      }
      grid(l, k) = scale * acc;
    }
  }
  return DdFrame(std::move(grid));
}

MatrixXc dd_transform_matrix(const FrameParams& params) {
  const int m = params.delay_bins;
  const int n = params.doppler_bins;
  const Index mn = static_cast<Index>(m) * n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  MatrixXc z = MatrixXc::Zero(mn, mn);
  // Row (k + l*N) of Z collects time samples l + mm*M with phase -2pi mm k/N.
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int mm = 0; mm < n; ++mm) {
        const double phase = -2.0 * kPi * mm * k / n;
        z(k + static_cast<Index>(l) * n, l + static_cast<Index>(mm) * m) =
            scale * Complex(std::cos(phase), std::sin(phase));
      }
    }
  }
  return z;
}

}  // namespace gsvdlink
