#include "tsfactor/linalg.hpp"

#include "tsfactor/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace tsfactor {

void require_valid(const Matrix& a, const std::string& what) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument(what + ": matrix must have at least one row and column");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument(what + ": matrix contains non-finite entries");
  }
}

double frobenius_norm(const Matrix& a) { return a.norm(); }

double frobenius_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("frobenius_inner: shape mismatch");
  }
  return a.cwiseProduct(b).sum();
}

namespace {

// Power iteration on a^T a from `x` (unit norm). Returns sqrt of the converged
// Rayleigh quotient, or nullopt when the iteration cap is hit.
std::optional<double> power_iteration(const Matrix& a, Vector x, double tol, long cap) {
  for (long it = 0; it < cap; ++it) {
    const Vector y = a.transpose() * (a * x);
    const double mu = x.dot(y);
    const double ynorm = y.norm();
    if (ynorm == 0.0) return 0.0;  // x lies in the null space of a
    const double residual = (y - mu * x).norm();
    if (residual <= tol * mu) return std::sqrt(mu);
    x = y / ynorm;
  }
  return std::nullopt;
}

}  // namespace

double operator_norm(const Matrix& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("operator_norm: tol must be positive");
  if (a.size() == 0) return 0.0;

  const Eigen::Index n = a.cols();
  const long cap = 10L * std::max(a.rows(), a.cols()) + 200;

  // The all-ones start is exactly orthogonal to the top singular vector of many
  // structured matrices (e.g. skew-symmetric top eigenvectors of symmetric
  // Toeplitz matrices), where the iteration converges to a smaller value with a
  // small residual. A second, deterministic pseudo-random start covers that case.
  Vector ones = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  Vector scrambled(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    scrambled(i) = static_cast<double>(splitmix64(static_cast<std::uint64_t>(i)) >> 11) * 0x1.0p-53 - 0.5;
  }
  scrambled.normalize();

  const auto first = power_iteration(a, ones, tol, cap);
  const auto second = power_iteration(a, scrambled, tol, cap);
  if (!first || !second) {
    throw NumericError("operator_norm: power iteration did not converge within " +
                       std::to_string(cap) + " iterations");
  }
  return std::max(*first, *second);
}

SvdResult svd(const Matrix& a) {
  require_valid(a, "svd");
  Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw NumericError("svd: decomposition failed to converge");
  }
  SvdResult out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
  if (!out.left.allFinite() || !out.right.allFinite() || !out.singular_values.allFinite()) {
    throw NumericError("svd: decomposition produced non-finite values");
  }
  return out;
}

Matrix truncate_rank(const SvdResult& s, int k) {
  const auto r = s.singular_values.size();
  if (k < 1 || k > r) {
    throw std::invalid_argument("truncate_rank: k = " + std::to_string(k) +
                                " outside [1, " + std::to_string(r) + "]");
  }
  return s.left.leftCols(k) * s.singular_values.head(k).asDiagonal() *
         s.right.leftCols(k).transpose();
}

int numerical_rank(const Vector& singular_values) {
  if (singular_values.size() == 0) return 0;
  const double top = singular_values.maxCoeff();
  if (top <= 0.0) return 0;
  const double cut = 1e-12 * top;
  return static_cast<int>((singular_values.array() > cut).count());
}

int numerical_rank(const Matrix& a) { return numerical_rank(svd(a).singular_values); }

namespace {

Vector symmetric_eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("symmetric eigensolver: matrix must be square and nonempty");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver: failed to converge");
  }
  return es.eigenvalues();  // ascending
}

}  // namespace

double max_eigenvalue_symmetric(const Matrix& a) {
  const Vector ev = symmetric_eigenvalues(a);
  return ev(ev.size() - 1);
}

double min_eigenvalue_symmetric(const Matrix& a) { return symmetric_eigenvalues(a)(0); }

}  // namespace tsfactor
