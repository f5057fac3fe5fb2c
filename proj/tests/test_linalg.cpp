#include "tsfactor/linalg.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace tsfactor;
using tsfactor::testing::random_low_rank;
using tsfactor::testing::random_matrix;

namespace {

double orthonormality_residual(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

}  // namespace

TEST(FrobeniusNorm, Examples) {
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix::Identity(2, 2)), std::sqrt(2.0));
  EXPECT_EQ(frobenius_norm(Matrix::Zero(3, 4)), 0.0);
  Matrix row(1, 2);
  row << 3, 4;
  EXPECT_DOUBLE_EQ(frobenius_norm(row), 5.0);
}

TEST(OperatorNorm, DiagonalAndNilpotent) {
  Matrix diag = Matrix::Zero(2, 2);
  diag.diagonal() << 3, 1;
  EXPECT_NEAR(operator_norm(diag, 1e-12), 3.0, 1e-10);

  Matrix shift(2, 2);
  shift << 0, 1, 0, 0;
  EXPECT_NEAR(operator_norm(shift, 1e-12), 1.0, 1e-10);
}

TEST(OperatorNorm, ToeplitzMatchesCharacteristicPolynomialRoot) {
  // Largest root of det(A - l I) for A = 0.5^{|i-j|}, found by bisection on the
  // explicit 3x3 determinant.
  constexpr double kLambdaMax = 1.8430703308172535;
  Matrix a(3, 3);
  a << 1, 0.5, 0.25, 0.5, 1, 0.5, 0.25, 0.5, 1;
  // A is PSD, so ||A||_op equals its largest eigenvalue.
  EXPECT_NEAR(operator_norm(a, 1e-13), kLambdaMax, 1e-10);
  EXPECT_NEAR(max_eigenvalue_symmetric(a), kLambdaMax, 1e-12);
}

TEST(OperatorNorm, AllOnesStartInNullSpace) {
  Matrix a(1, 2);
  a << 1, -1;
  EXPECT_NEAR(operator_norm(a), std::sqrt(2.0), 1e-10);
  EXPECT_EQ(operator_norm(Matrix::Zero(3, 3)), 0.0);
}

TEST(OperatorNorm, RejectsNonPositiveTolerance) {
  EXPECT_THROW(operator_norm(Matrix::Identity(2, 2), 0.0), std::invalid_argument);
}

TEST(OperatorNorm, NonConvergenceIsReported) {
  // Two nearly equal top singular values with an unhelpful start vector stall the
  // iteration well past the cap when the tolerance is tight.
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0 - 1e-9;
  a(0, 1) = 0.0;
  EXPECT_THROW(operator_norm(a, 1e-15), NumericError);
}

TEST(OperatorNorm, NormSandwichAndPsdAgreement) {
  for (std::uint32_t seed = 0; seed < 40; ++seed) {
    const Matrix a = random_matrix(2 + seed % 7, 2 + (seed * 3) % 6, seed);
    double op = 0.0;
    try {
      op = operator_norm(a, 1e-12);
    } catch (const NumericError&) {
      op = svd(a).singular_values(0);
    }
    const double fro = frobenius_norm(a);
    const double r = static_cast<double>(std::min(a.rows(), a.cols()));
    EXPECT_LE(op, fro * (1 + 1e-12));
    EXPECT_LE(fro, std::sqrt(r) * op * (1 + 1e-12));

    const Matrix psd = a.transpose() * a;
    double psd_op = 0.0;
    try {
      psd_op = operator_norm(psd, 1e-12);
    } catch (const NumericError&) {
      continue;
    }
    EXPECT_NEAR(psd_op, max_eigenvalue_symmetric(psd), 1e-8 * max_eigenvalue_symmetric(psd));
  }
}

TEST(Svd, IdentityAndRankOne) {
  const SvdResult id = svd(Matrix::Identity(3, 3));
  EXPECT_TRUE(id.singular_values.isApprox(Vector::Ones(3), 1e-14));

  Vector u(2);
  u << 2, 0;
  Vector v(3);
  v << 0, 3, 0;
  const SvdResult r1 = svd(u * v.transpose());
  EXPECT_NEAR(r1.singular_values(0), 6.0, 1e-12);
  EXPECT_NEAR(r1.singular_values(1), 0.0, 1e-12);
  EXPECT_EQ(numerical_rank(r1.singular_values), 1);
}

TEST(Svd, ReconstructionAndOrthonormality) {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const Matrix a = random_matrix(1 + seed % 9, 1 + (seed * 5) % 11, 100 + seed);
    const SvdResult s = svd(a);
    const auto r = std::min(a.rows(), a.cols());
    ASSERT_EQ(s.singular_values.size(), r);
    const Matrix back = s.left * s.singular_values.asDiagonal() * s.right.transpose();
    EXPECT_LE((back - a).norm(), 1e-9 * a.norm());
    EXPECT_LE(orthonormality_residual(s.left), 1e-9 * r);
    EXPECT_LE(orthonormality_residual(s.right), 1e-9 * r);
    for (Eigen::Index i = 0; i < r; ++i) {
      EXPECT_GE(s.singular_values(i), 0.0);
      if (i > 0) EXPECT_LE(s.singular_values(i), s.singular_values(i - 1));
    }
  }
}

TEST(Svd, RejectsNonFiniteInput) {
  Matrix a = Matrix::Ones(2, 2);
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(svd(a), std::invalid_argument);
}

TEST(TruncateRank, FullRankAndRankOne) {
  const Matrix a = random_matrix(5, 4, 3);
  const SvdResult s = svd(a);
  EXPECT_LE((truncate_rank(s, 4) - a).norm(), 1e-9 * a.norm());

  const Matrix r1 = random_low_rank(4, 6, 1, 11);
  EXPECT_LE((truncate_rank(svd(r1), 1) - r1).norm(), 1e-12 * r1.norm());
}

TEST(TruncateRank, OutOfRange) {
  const SvdResult s = svd(random_matrix(3, 3, 1));
  EXPECT_THROW(truncate_rank(s, 0), std::invalid_argument);
  EXPECT_THROW(truncate_rank(s, 4), std::invalid_argument);
}

TEST(TruncateRank, EckartYoungDominatesRandomCandidates) {
  // Oracle: the truncation error must not exceed that of any of 1000 random
  // rank-k products B C (B m x k, C k x n Gaussian), each rescaled by its
  // least-squares optimal scalar so the candidates are competitive.
  std::mt19937 gen(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(gen);
    return m;
  };
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    const Eigen::Index m = 2 + seed % 7;
    const Eigen::Index n = 2 + (seed / 7) % 7;
    const Matrix a = random_matrix(m, n, 500 + seed);
    const SvdResult s = svd(a);
    for (int k = 1; k <= std::min(m, n); ++k) {
      const double best = (truncate_rank(s, k) - a).norm();
      double best_candidate = std::numeric_limits<double>::infinity();
      for (int c = 0; c < 1000; ++c) {
        const Matrix cand = draw(m, k) * draw(k, n);
        const double scale = cand.cwiseProduct(a).sum() / cand.squaredNorm();
        best_candidate = std::min(best_candidate, (scale * cand - a).norm());
      }
      EXPECT_LE(best, best_candidate + 1e-12) << "seed " << seed << " k " << k;
      EXPECT_LE(numerical_rank(truncate_rank(s, k)), k);
    }
  }
}

TEST(EigenExtremes, RejectNonSquare) {
  EXPECT_THROW(max_eigenvalue_symmetric(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  EXPECT_NEAR(max_eigenvalue_symmetric(a), 3.0, 1e-14);
  EXPECT_NEAR(min_eigenvalue_symmetric(a), 1.0, 1e-14);
}

TEST(NumericalRank, ThresholdRelativeToTop) {
  Vector s(3);
  s << 1.0, 1e-11, 1e-13;
  EXPECT_EQ(numerical_rank(s), 2);
  EXPECT_EQ(numerical_rank(Vector(Vector::Zero(3))), 0);
}
