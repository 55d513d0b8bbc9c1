#pragma once

#include "gsvdlink/errors.hpp"
#include "gsvdlink/types.hpp"

namespace gsvdlink {

/// CS decomposition of a matrix pair (Q1, Q2) whose vertical stack has
/// orthonormal columns: Q1 = U1 * C * W^H, Q2 = U2 * S * W^H with U1, U2, W
/// unitary, C and S diagonal-block structured and C^H C + S^H S = I.
struct CsFactors {
  MatrixXc u1;  ///< m1 x m1 unitary
  MatrixXc u2;  ///< m2 x m2 unitary
  MatrixXc w;   ///< q x q unitary shared right factor
  VectorXd c;   ///< length q, descending in [0, 1]
  VectorXd s;   ///< length q, ascending, c[i]^2 + s[i]^2 = 1

  /// Number of leading columns with s == 0 (pure Q1 directions). The i-th
  /// diagonal entry of S sits at row i - zero_s_count.
  Index zero_s_count = 0;
};

CsFactors cs_decompose(const MatrixXc& q1, const MatrixXc& q2);

/// Joint factorization H1 = U1 * Sigma1 * V^H, H2 = U2 * Sigma2 * V^H with a
/// shared right factor V and Sigma1^H Sigma1 + Sigma2^H Sigma2 = I. The
/// diagonal gains c1 are sorted descending, so the column blocks come out as
/// [user-1 private | common | user-2 private].
struct GsvdFactors {
  MatrixXc u1;      ///< m1 x m1 unitary
  MatrixXc u2;      ///< m2 x m2 unitary
  MatrixXc v;       ///< n x q joint right factor
  MatrixXc sigma1;  ///< m1 x q, diagonal c1 aligned top-left
  MatrixXc sigma2;  ///< m2 x q, diagonal c2 aligned bottom-right
  VectorXd c1;      ///< length q per-stream gains seen by user 1, descending
  VectorXd c2;      ///< length q per-stream gains seen by user 2, ascending

  Index num_private1 = 0;  ///< leading columns with c1 == 1, c2 == 0
  Index num_common = 0;    ///< columns with both gains in (0, 1)
  Index num_private2 = 0;  ///< trailing columns with c1 == 0, c2 == 1

  Index rank() const { return c1.size(); }
};

/// Computes the GSVD of (H1, H2) via column-pivoted QR of the stacked matrix
/// followed by a CS decomposition of the orthonormal blocks. Requires the
/// stack to have full numerical rank min(n, m1 + m2) at tolerance
/// 1e-10 * ||.||; a rank-deficient draw raises DegenerateChannelError so the
/// caller can redraw.
GsvdFactors gsvd(const MatrixXc& h1, const MatrixXc& h2);

/// Orthonormal basis of the right null space of A, n x (n - rank(A)).
MatrixXc null_space_basis(const MatrixXc& a);

}  // namespace gsvdlink
