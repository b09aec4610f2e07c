#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "rlk/error.hpp"
#include "rlk/krylov.hpp"
#include "rlk/linalg.hpp"
#include "support/instances.hpp"

using namespace rlk;
using cd = std::complex<double>;

namespace {

double
orthogonality_defect(const CMatrix<double>& Q) {
  const auto G = matmul(adjoint(Q), Q);
  return frobenius_norm(subtract(G, CMatrix<double>::identity(Q.cols())));
}

// || M conj(Q_k) - Q_{k+1} H ||_F for the leading k = steps columns.
double
arnoldi_relation_residual(const CMatrix<double>& M, const KrylovFactorization<double>& f) {
  const std::size_t k = f.steps;
  const auto lhs = matmul(M, conjugate(leading_columns(f.Q, k)));
  CMatrix<double> rhs(M.rows(), k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < f.Q.cols(); ++i) {
      for (std::size_t r = 0; r < M.rows(); ++r) {
        rhs(r, j) += f.Q(r, i) * f.H(i, j);
      }
    }
  }
  return frobenius_norm(subtract(lhs, rhs));
}

} // namespace

TEST(RLinearArnoldi, RealDiagonalBreaksDownAtOnce) {
  const CMatrix<double> M{{3.0, 0.0, 0.0}, {0.0, 5.0, 0.0}, {0.0, 0.0, 7.0}};
  const CVector<double> b{1.0, 0.0, 0.0};
  const auto f = rlinear_arnoldi(M, b, 3);
  ASSERT_TRUE(f.breakdown_step.has_value());
  EXPECT_EQ(*f.breakdown_step, 1u);
  EXPECT_EQ(f.steps, 1u);
  EXPECT_EQ(f.Q.cols(), 1u);
  EXPECT_NEAR(std::abs(f.H(0, 0) - cd{3.0}), 0.0, 1e-15);
}

TEST(RLinearArnoldi, PermutationExample) {
  const CMatrix<double> M{{0.0, 1.0}, {1.0, 0.0}};
  const CVector<double> b{1.0, 0.0};
  const auto f = rlinear_arnoldi(M, b, 2);
  ASSERT_TRUE(f.breakdown_step.has_value());
  EXPECT_EQ(*f.breakdown_step, 2u);
  EXPECT_EQ(f.Q.cols(), 2u);
  EXPECT_NEAR(std::abs(f.Q(0, 0) - cd{1.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.Q(1, 1) - cd{1.0}), 0.0, 1e-15);
  const cd expected[3][2] = {{0.0, 1.0}, {1.0, 0.0}, {0.0, 0.0}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(std::abs(f.H(i, j) - expected[i][j]), 0.0, 1e-15) << i << "," << j;
    }
  }
}

TEST(RLinearArnoldi, RelationAndOrthogonalityOnRandomInput) {
  Rng rng(21);
  const auto M = test::random_matrix(12, 12, rng);
  const auto b = test::random_vector(12, rng);
  const auto f = rlinear_arnoldi(M, b, 8);
  EXPECT_EQ(f.steps, 8u);
  EXPECT_FALSE(f.breakdown_step.has_value());
  EXPECT_LE(arnoldi_relation_residual(M, f), 1e-12 * frobenius_norm(M));
  EXPECT_LE(orthogonality_defect(f.Q), 1e-12);
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_EQ(f.H(j + 1, j).imag(), 0.0);
    EXPECT_GT(f.H(j + 1, j).real(), 0.0);
  }
}

TEST(RLinearArnoldi, SpansMonomialKrylovVectors) {
  Rng rng(22);
  const auto M = test::random_matrix(10, 10, rng);
  const auto b = test::random_vector(10, rng);
  const auto f = rlinear_arnoldi(M, b, 5);
  CVector<double> v = b;
  for (std::size_t j = 0; j < 5; ++j) {
    // project v onto the first j+1 columns of Q
    const auto Qj = leading_columns(f.Q, j + 1);
    const auto coeffs = matvec(adjoint(Qj), v);
    auto r = v;
    const auto proj = matvec(Qj, coeffs);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] -= proj[i];
    }
    EXPECT_LE(norm2(r), 1e-10 * norm2(v)) << "j=" << j;
    v = matvec(M, conjugate(v));
  }
}

TEST(RLinearArnoldi, BasisDoesNotDependOnKappa) {
  // The factorization never sees kappa; two runs are bitwise identical.
  Rng rng(23);
  const auto M = test::random_matrix(9, 9, rng);
  const auto b = test::random_vector(9, rng);
  const auto f1 = rlinear_arnoldi(M, b, 6);
  const auto f2 = rlinear_arnoldi(M, b, 6);
  EXPECT_TRUE(f1.Q == f2.Q);
  EXPECT_TRUE(f1.H == f2.H);
}

TEST(RLinearArnoldi, ErrorsOnBadInput) {
  const auto M = CMatrix<double>::identity(3);
  EXPECT_THROW(rlinear_arnoldi(M, CVector<double>(3), 2), InvalidArgument);
  EXPECT_THROW(rlinear_arnoldi(M, CVector<double>{1.0, 0.0, 0.0}, 4), InvalidArgument);
}

TEST(RLinearArnoldi, WorksInDoubleDouble) {
  Rng rng(24);
  const auto M = test::random_matrix(8, 8, rng);
  const auto b = test::random_vector(8, rng);
  const auto fd = rlinear_arnoldi(M, b, 6);
  const auto fdd = rlinear_arnoldi(test::widen(M), test::widen(b), 6);
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t i = 0; i <= j + 1; ++i) {
      EXPECT_NEAR(std::abs(to_cdouble(fdd.H(i, j)) - fd.H(i, j)), 0.0, 1e-11);
    }
  }
}

TEST(ComplexSymmetricLanczos, HandExample) {
  const CMatrix<double> M{{1.0, 0.0}, {0.0, 2.0}};
  const double s = 1.0 / std::sqrt(2.0);
  const auto res = cs_lanczos(M, CVector<double>{s, s}, 2);
  ASSERT_EQ(res.J.size(), 2u);
  EXPECT_NEAR(std::abs(res.J.alphas[0] - cd{1.5}), 0.0, 1e-15);
  EXPECT_NEAR(res.J.betas[0], 0.5, 1e-15);
  EXPECT_NEAR(std::abs(res.J.alphas[1] - cd{1.5}), 0.0, 1e-15);
  const auto T = res.J.to_dense();
  EXPECT_NEAR(std::abs(T(0, 1) - cd{0.5}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(T(1, 0) - cd{0.5}), 0.0, 1e-15);
}

TEST(ComplexSymmetricLanczos, OneByOne) {
  const cd lambda{2.0, -3.0};
  const CMatrix<double> M{{lambda}};
  const auto res = cs_lanczos(M, CVector<double>{1.0}, 1);
  ASSERT_EQ(res.J.size(), 1u);
  EXPECT_TRUE(res.J.betas.empty());
  EXPECT_NEAR(std::abs(res.J.alphas[0] - lambda), 0.0, 1e-15);
}

TEST(ComplexSymmetricLanczos, MatchesArnoldiOnSymmetricInput) {
  Rng rng(25);
  for (int trial = 0; trial < 5; ++trial) {
    const auto M = test::random_symmetric(10, rng);
    auto b = test::random_vector(10, rng);
    const double nb = norm2(b);
    for (auto& x : b) {
      x /= nb;
    }
    const auto lz = cs_lanczos(M, b, 10);
    const auto ar = rlinear_arnoldi(M, b, 10);
    for (std::size_t j = 0; j < lz.J.size(); ++j) {
      EXPECT_NEAR(std::abs(lz.J.alphas[j] - ar.H(j, j)), 0.0, 1e-10);
      if (j + 1 < lz.J.size()) {
        EXPECT_NEAR(lz.J.betas[j], ar.H(j + 1, j).real(), 1e-10);
        EXPECT_NEAR(std::abs(ar.H(j, j + 1) - cd{lz.J.betas[j]}), 0.0, 1e-10);
      }
    }
    EXPECT_LE(orthogonality_defect(lz.Q), 1e-12);
  }
}

TEST(ComplexSymmetricLanczos, RejectsNonSymmetricMatrix) {
  const CMatrix<double> M{{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_FALSE(is_complex_symmetric(M));
  EXPECT_THROW(cs_lanczos(M, CVector<double>{1.0, 0.0}, 2), InvalidArgument);
}

TEST(ComplexSymmetricLanczos, ReportsBreakdown) {
  const CMatrix<double> M{{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 3.0}};
  const double s = 1.0 / std::sqrt(2.0);
  const auto res = cs_lanczos(M, CVector<double>{s, s, 0.0}, 3);
  ASSERT_TRUE(res.breakdown_step.has_value());
  EXPECT_EQ(*res.breakdown_step, 2u);
  EXPECT_EQ(res.J.size(), 2u);
}

TEST(ComplexSymmetricLanczos, WithoutReorthogonalizationStillTridiagonal) {
  Rng rng(26);
  const auto M = test::random_symmetric(12, rng);
  auto b = test::random_vector(12, rng);
  const double nb = norm2(b);
  for (auto& x : b) {
    x /= nb;
  }
  const auto plain = cs_lanczos(M, b, 6, false);
  const auto full = cs_lanczos(M, b, 6, true);
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_NEAR(std::abs(plain.J.alphas[j] - full.J.alphas[j]), 0.0, 1e-9);
  }
}

TEST(Prop, EigenpairCircle) {
  // If M conj(z) = lambda z then M conj(e^{i phi} z) = e^{-2 i phi} lambda e^{i phi} z.
  Rng rng(27);
  const std::size_t n = 6;
  const auto inst = test::random_condiagonalizable(n, rng);
  // first column of X is a coneigenvector with coneigenvalue lambda_0
  CVector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = inst.X(i, 0);
  }
  const double nz = norm2(z);
  for (auto& x : z) {
    x /= nz;
  }
  const double lambda = inst.lambda[0];
  for (double phi : {0.3, 1.1, 2.5}) {
    const cd rot = std::polar(1.0, phi);
    CVector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = rot * z[i];
    }
    const auto lhs = apply_antilinear(cd{0.0}, inst.M, w);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err += std::norm(lhs[i] - std::polar(1.0, -2.0 * phi) * lambda * w[i]);
    }
    EXPECT_LE(std::sqrt(err), 1e-12 * std::max(1.0, lambda));
  }
}

TEST(KrylovSimilarity, IdentityGivesZeroAngles) {
  Rng rng(28);
  const auto M = test::random_matrix(6, 6, rng);
  const auto b = test::random_vector(6, rng);
  for (double a : krylov_similarity_check(M, b, CMatrix<double>::identity(6), 5)) {
    EXPECT_LE(a, 1e-12);
  }
}

TEST(KrylovSimilarity, UnitaryAndDiagonalScaling) {
  Rng rng(29);
  const auto M = test::random_matrix(6, 6, rng);
  const auto b = test::random_vector(6, rng);
  const auto U = random_unitary(6, rng);
  const auto angles = krylov_similarity_check(M, b, U, 5);
  EXPECT_EQ(angles.size(), 5u);
  for (double a : angles) {
    EXPECT_LE(a, 1e-10);
  }
  const auto M3 = test::random_matrix(3, 3, rng);
  const auto b3 = test::random_vector(3, rng);
  const CMatrix<double> X{{1.0, 0.0, 0.0}, {0.0, 10.0, 0.0}, {0.0, 0.0, 100.0}};
  for (double a : krylov_similarity_check(M3, b3, X, 3)) {
    EXPECT_LE(a, 1e-8);
  }
}

TEST(KrylovSimilarity, SingularXThrows) {
  const CMatrix<double> X{{1.0, 1.0}, {1.0, 1.0}};
  EXPECT_THROW(krylov_similarity_check(CMatrix<double>::identity(2), CVector<double>{1.0, 0.0}, X, 2),
               NumericalError);
}
