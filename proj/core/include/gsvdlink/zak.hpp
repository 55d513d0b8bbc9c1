#pragma once

#include "gsvdlink/frame.hpp"

namespace gsvdlink {

/// Discrete Zak transform pair mapping the M x N delay-Doppler grid to MN
/// time samples and back. Convention: time index n = l + m*M,
///   s[l + m*M] = (1/sqrt(N)) * sum_k X[l,k] * exp(+j 2 pi m k / N).
/// Both maps are unitary.
VectorXc dzt_modulate(const DdFrame& frame, const FrameParams& params);
DdFrame dzt_demodulate(const VectorXc& samples, const FrameParams& params);

/// Matrix Z taking a time-domain sample vector to the DD symbol vector
/// (vec{X^T} ordering), i.e. the matrix form of dzt_demodulate composed
/// with the vector view. Z is MN x MN unitary.
MatrixXc dd_transform_matrix(const FrameParams& params);

}  // namespace gsvdlink
