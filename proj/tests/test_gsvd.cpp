#include <doctest.h>

#include <Eigen/QR>

#include "gsvdlink/gsvd.hpp"
#include "test_helpers.hpp"

using namespace gsvdlink;
using gsvdlink::testing::max_abs;
using gsvdlink::testing::random_matrix;

namespace {

void check_gsvd_invariants(const MatrixXc& h1, const MatrixXc& h2,
                           const GsvdFactors& f) {
  const Index m1 = h1.rows();
  const Index m2 = h2.rows();
  const Index q = f.rank();

  // unitarity
  CHECK(max_abs(f.u1.adjoint() * f.u1 - MatrixXc::Identity(m1, m1)) <
        1e-12 * m1);
  CHECK(max_abs(f.u2.adjoint() * f.u2 - MatrixXc::Identity(m2, m2)) <
        1e-12 * m2);

  // reconstruction, relative Frobenius
  CHECK((f.u1 * f.sigma1 * f.v.adjoint() - h1).norm() <= 1e-10 * h1.norm());
  CHECK((f.u2 * f.sigma2 * f.v.adjoint() - h2).norm() <= 1e-10 * h2.norm());

  // Paige-Saunders normalization
  CHECK(max_abs(f.sigma1.adjoint() * f.sigma1 + f.sigma2.adjoint() * f.sigma2 -
                MatrixXc::Identity(q, q)) < 1e-10);

  // coupling coefficients: Pythagorean identity and descending c1
  for (Index i = 0; i < q; ++i) {
    CHECK(std::abs(f.c1(i) * f.c1(i) + f.c2(i) * f.c2(i) - 1.0) < 1e-12);
    if (i > 0) {
      CHECK(f.c1(i) <= f.c1(i - 1) + 1e-12);
    }
  }

  // block structure: exact ones/zeros in the private blocks
  CHECK(f.num_private1 + f.num_common + f.num_private2 == q);
  for (Index i = 0; i < f.num_private1; ++i) {
    CHECK(f.c1(i) == 1.0);
    CHECK(f.c2(i) == 0.0);
  }
  for (Index i = q - f.num_private2; i < q; ++i) {
    CHECK(f.c1(i) == 0.0);
    CHECK(f.c2(i) == 1.0);
  }
  for (Index i = f.num_private1; i < q - f.num_private2; ++i) {
    CHECK(f.c1(i) > 0.0);
    CHECK(f.c1(i) < 1.0);
    CHECK(f.c2(i) > 0.0);
    CHECK(f.c2(i) < 1.0);
  }

  // Sigma shapes: diagonal alignment per block structure
  for (Index i = 0; i < std::min(m1, q); ++i) {
    CHECK(f.sigma1(i, i) == Complex(f.c1(i), 0));
  }
  const Index z = f.num_private1;
  for (Index i = z; i < q; ++i) {
    CHECK(f.sigma2(i - z, i) == Complex(f.c2(i), 0));
  }
}

}  // namespace

TEST_CASE("cs decomposition of trivial pairs") {
  SUBCASE("balanced 1x1 pair") {
    MatrixXc q1(1, 1), q2(1, 1);
    const double a = 1.0 / std::sqrt(2.0);
    q1 << Complex(a, 0);
    q2 << Complex(a, 0);
    CsFactors f = cs_decompose(q1, q2);
    CHECK(f.c(0) == doctest::Approx(a));
    CHECK(f.s(0) == doctest::Approx(a));
    CHECK(std::abs(std::abs(f.u1(0, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(f.u2(0, 0)) - 1.0) < 1e-14);
  }

  SUBCASE("pure private direction") {
    MatrixXc q1(1, 1), q2(1, 1);
    q1 << Complex(1, 0);
    q2 << Complex(0, 0);
    CsFactors f = cs_decompose(q1, q2);
    CHECK(f.c(0) == 1.0);
    CHECK(f.s(0) == 0.0);
    CHECK(f.zero_s_count == 1);
  }

  SUBCASE("non-orthonormal input rejected") {
    MatrixXc q1 = MatrixXc::Identity(2, 2);
    MatrixXc q2 = MatrixXc::Identity(2, 2);
    CHECK_THROWS_AS(cs_decompose(q1, q2), ArgumentError);
  }
}

TEST_CASE("cs decomposition reconstructs a random orthonormal stack") {
  std::mt19937_64 rng(21);
  MatrixXc raw = random_matrix(10, 3, rng);
  Eigen::HouseholderQR<MatrixXc> qr(raw);
  MatrixXc q = qr.householderQ() * MatrixXc::Identity(10, 3);
  MatrixXc q1 = q.topRows(5);
  MatrixXc q2 = q.bottomRows(5);

  CsFactors f = cs_decompose(q1, q2);
  MatrixXc c = MatrixXc::Zero(5, 3);
  MatrixXc s = MatrixXc::Zero(5, 3);
  for (Index i = 0; i < 3; ++i) {
    c(i, i) = f.c(i);
    s(i - f.zero_s_count + 0, i) = f.s(i);  // zero_s_count == 0 here
  }
  CHECK(f.zero_s_count == 0);
  CHECK((f.u1 * c * f.w.adjoint() - q1).norm() < 1e-11);
  CHECK((f.u2 * s * f.w.adjoint() - q2).norm() < 1e-11);
}

TEST_CASE("gsvd of 1x1 symmetric pair") {
  MatrixXc h1(1, 1), h2(1, 1);
  h1 << Complex(1, 0);
  h2 << Complex(1, 0);
  GsvdFactors f = gsvd(h1, h2);
  CHECK(f.c1(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(f.c2(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(f.v(0, 0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(std::abs(f.u1(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(f.u2(0, 0)) - 1.0) < 1e-14);
  check_gsvd_invariants(h1, h2, f);
}

TEST_CASE("gsvd of I and 2I") {
  MatrixXc h1 = MatrixXc::Identity(2, 2);
  MatrixXc h2 = 2.0 * MatrixXc::Identity(2, 2);
  GsvdFactors f = gsvd(h1, h2);
  for (Index i = 0; i < 2; ++i) {
    CHECK(f.c1(i) == doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK(f.c2(i) == doctest::Approx(2.0 / std::sqrt(5.0)));
  }
  // V^H V = 5 I up to phase/ordering
  CHECK(max_abs(f.v.adjoint() * f.v - 5.0 * MatrixXc::Identity(2, 2)) <
        1e-12);
  check_gsvd_invariants(h1, h2, f);
}

TEST_CASE("gsvd invariants across the three regime shapes") {
  std::mt19937_64 rng(33);
  // (m1, m2, n) shapes: m = MN*G rows, n = MN*C columns with MN = 2.
  struct Shape {
    Index m, n, expected_private;
  };
  const Shape shapes[] = {
      {6, 8, 2},   // C=4, G=3: regime I
      {8, 6, 0},   // C=3, G=4: regime II
      {4, 10, 4},  // C=5, G=2: regime III
      {4, 4, 0},   // C=2, G=2: boundary
      {6, 4, 0},   // random 6x4 pair from the oracle example
  };
  for (const Shape& sh : shapes) {
    CAPTURE(sh.m);
    CAPTURE(sh.n);
    for (int rep = 0; rep < 5; ++rep) {
      MatrixXc h1 = random_matrix(sh.m, sh.n, rng);
      MatrixXc h2 = random_matrix(sh.m, sh.n, rng);
      GsvdFactors f = gsvd(h1, h2);
      CHECK(f.rank() == std::min(sh.n, 2 * sh.m));
      CHECK(f.num_private1 == sh.expected_private);
      CHECK(f.num_private2 == sh.expected_private);
      check_gsvd_invariants(h1, h2, f);
    }
  }
}

TEST_CASE("gsvd is deterministic") {
  std::mt19937_64 rng(55);
  MatrixXc h1 = random_matrix(6, 8, rng);
  MatrixXc h2 = random_matrix(6, 8, rng);
  GsvdFactors a = gsvd(h1, h2);
  GsvdFactors b = gsvd(h1, h2);
  CHECK(max_abs(a.u1 - b.u1) == 0.0);
  CHECK(max_abs(a.u2 - b.u2) == 0.0);
  CHECK(max_abs(a.v - b.v) == 0.0);
  CHECK((a.c1 - b.c1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gsvd error paths") {
  SUBCASE("rank-deficient stack is a degenerate channel") {
    MatrixXc h1 = MatrixXc::Zero(3, 4);
    h1(0, 0) = 1.0;
    MatrixXc h2 = MatrixXc::Zero(3, 4);
    CHECK_THROWS_AS(gsvd(h1, h2), DegenerateChannelError);
  }

  SUBCASE("non-finite entries rejected") {
    MatrixXc h1 = MatrixXc::Identity(2, 2);
    MatrixXc h2 = MatrixXc::Identity(2, 2);
    h1(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0);
    CHECK_THROWS_AS(gsvd(h1, h2), ArgumentError);
  }

  SUBCASE("shape mismatch rejected") {
    CHECK_THROWS_AS(gsvd(MatrixXc::Identity(2, 2), MatrixXc::Identity(2, 3)),
                    ShapeError);
  }
}

TEST_CASE("null space basis") {
  SUBCASE("single row") {
    MatrixXc a(1, 2);
    a << Complex(1, 0), Complex(0, 0);
    MatrixXc basis = null_space_basis(a);
    REQUIRE(basis.cols() == 1);
    CHECK(std::abs(std::abs(basis(1, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(basis(0, 0)) < 1e-14);
  }

  SUBCASE("full rank has empty basis") {
    CHECK(null_space_basis(MatrixXc::Identity(3, 3)).cols() == 0);
  }

  SUBCASE("random wide matrix") {
    std::mt19937_64 rng(77);
    MatrixXc a = random_matrix(4, 6, rng);
    MatrixXc basis = null_space_basis(a);
    REQUIRE(basis.cols() == 2);
    CHECK(max_abs(basis.adjoint() * basis - MatrixXc::Identity(2, 2)) <
          1e-12);
    CHECK((a * basis).norm() <= 1e-10 * a.norm());
  }
}
