#include "gsvdlink/gsvd.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace gsvdlink {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kStructTol = 1e-8;

// Unit-modulus factor that makes the first nonzero entry of v real-positive.
Complex phase_factor(const Eigen::Ref<const VectorXc>& v) {
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      return std::conj(v(i)) / mag;
    }
  }
  return Complex(1, 0);
}

}  // namespace

CsFactors cs_decompose(const MatrixXc& q1, const MatrixXc& q2) {
  const Index m1 = q1.rows();
  const Index m2 = q2.rows();
  const Index q = q1.cols();
  if (q2.cols() != q) {
    throw ShapeError("cs_decompose: Q1 and Q2 must have the same column count");
  }
  if (q < 1 || m1 < 1 || m2 < 1) {
    throw ArgumentError("cs_decompose: empty operand");
  }

  MatrixXc gram = q1.adjoint() * q1 + q2.adjoint() * q2;
  gram -= MatrixXc::Identity(q, q);
  if (gram.cwiseAbs().maxCoeff() > 1e-10) {
    throw ArgumentError("cs_decompose: stacked columns are not orthonormal");
  }

  Eigen::BDCSVD<MatrixXc> svd(q1, Eigen::ComputeFullU | Eigen::ComputeFullV);

  CsFactors f;
  f.u1 = svd.matrixU();
  f.w = svd.matrixV();
  f.c = VectorXd::Zero(q);
  const Index nsv = std::min(m1, q);
  f.c.head(nsv) =
      svd.singularValues().head(nsv).cwiseMax(0.0).cwiseMin(1.0);

  // Fixed phase convention; W columns follow U1 so Q1 = U1 C W^H is kept.
  for (Index i = 0; i < m1; ++i) {
    const Complex factor = phase_factor(f.u1.col(i));
    f.u1.col(i) *= factor;
    if (i < q) {
      f.w.col(i) *= factor;
    }
  }

  MatrixXc t = q2 * f.w;  // columns orthogonal with norms s_i
  f.s = VectorXd(q);
  for (Index i = 0; i < q; ++i) {
    f.s(i) = std::min(t.col(i).norm(), 1.0);
  }

  Index z = 0;
  while (z < q && f.s(z) < kStructTol) {
    ++z;
  }
  if (q - z > m2) {
    throw ArgumentError("cs_decompose: inconsistent block ranks");
  }
  f.zero_s_count = z;

  for (Index i = 0; i < z; ++i) {
    f.s(i) = 0.0;
    f.c(i) = 1.0;
  }
  for (Index i = z; i < q; ++i) {
    const double d = std::hypot(f.c(i), f.s(i));
    f.c(i) /= d;
    f.s(i) /= d;
  }

  f.u2 = MatrixXc::Identity(m2, m2);
  const Index k = q - z;
  for (Index i = z; i < q; ++i) {
    f.u2.col(i - z) = t.col(i) / t.col(i).norm();
  }
  // For columns Q1 does not constrain (c == 0) the phase is pinned on U2
  // and absorbed into W; the product U2 S W^H is unchanged.
  for (Index i = z; i < q; ++i) {
    if (f.c(i) == 0.0) {
      const Complex factor = phase_factor(f.u2.col(i - z));
      f.u2.col(i - z) *= factor;
      f.w.col(i) *= factor;
    }
  }
  if (k < m2 && k > 0) {
    Eigen::HouseholderQR<MatrixXc> qr(f.u2.leftCols(k).eval());
    MatrixXc full = qr.householderQ() * MatrixXc::Identity(m2, m2);
    f.u2.rightCols(m2 - k) = full.rightCols(m2 - k);
  }
  for (Index j = k; j < m2; ++j) {
    f.u2.col(j) *= phase_factor(f.u2.col(j));
  }
  return f;
}

GsvdFactors gsvd(const MatrixXc& h1, const MatrixXc& h2) {
  if (!h1.allFinite() || !h2.allFinite()) {
    throw ArgumentError("gsvd: non-finite entries");
  }
  const Index m1 = h1.rows();
  const Index m2 = h2.rows();
  const Index n = h1.cols();
  if (h2.cols() != n) {
    throw ShapeError("gsvd: H1 and H2 must have the same column count");
  }
  if (m1 < 1 || m2 < 1 || n < 1) {
    throw ArgumentError("gsvd: empty operand");
  }

  MatrixXc stacked(m1 + m2, n);
  stacked.topRows(m1) = h1;
  stacked.bottomRows(m2) = h2;

  Eigen::ColPivHouseholderQR<MatrixXc> qr(stacked);
  qr.setThreshold(kRankTol);
  const Index q = std::min(n, m1 + m2);
  if (qr.rank() < q) {
    throw DegenerateChannelError(
        "gsvd: stacked channel is rank-deficient for its shape");
  }

  MatrixXc thin_q = qr.householderQ() * MatrixXc::Identity(m1 + m2, q);
  MatrixXc r = qr.matrixR()
                   .topLeftCorner(q, n)
                   .template triangularView<Eigen::Upper>();
  MatrixXc r_unpivoted = r * qr.colsPermutation().transpose();

  CsFactors cs = cs_decompose(thin_q.topRows(m1), thin_q.bottomRows(m2));

  const Index z2 = std::max<Index>(0, q - m2);  // leading c == 1 columns
  const Index z1 = std::max<Index>(0, q - m1);  // trailing c == 0 columns
  if (cs.zero_s_count != z2) {
    throw DegenerateChannelError("gsvd: H2 rank below regime requirement");
  }
  for (Index i = 0; i < q - z1; ++i) {
    if (cs.c(i) <= kStructTol) {
      throw DegenerateChannelError("gsvd: H1 rank below regime requirement");
    }
  }
  for (Index i = q - z1; i < q; ++i) {
    cs.c(i) = 0.0;
    cs.s(i) = 1.0;
  }

  GsvdFactors f;
  f.u1 = std::move(cs.u1);
  f.u2 = std::move(cs.u2);
  f.c1 = std::move(cs.c);
  f.c2 = std::move(cs.s);
  f.num_private1 = z2;
  f.num_private2 = z1;
  f.num_common = q - z1 - z2;

  f.sigma1 = MatrixXc::Zero(m1, q);
  for (Index i = 0; i < std::min(m1, q); ++i) {
    f.sigma1(i, i) = f.c1(i);
  }
  f.sigma2 = MatrixXc::Zero(m2, q);
  for (Index i = z2; i < q; ++i) {
    f.sigma2(i - z2, i) = f.c2(i);
  }
  f.v = r_unpivoted.adjoint() * cs.w;
  return f;
}

MatrixXc null_space_basis(const MatrixXc& a) {
  const Index n = a.cols();
  if (a.rows() == 0 || n == 0) {
    return MatrixXc::Identity(n, n);
  }
  Eigen::BDCSVD<MatrixXc> svd(a, Eigen::ComputeFullV);
  const VectorXd& sv = svd.singularValues();
  const double tol = kRankTol * (sv.size() > 0 ? sv(0) : 0.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol) {
    ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace gsvdlink
