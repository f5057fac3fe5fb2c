#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace tsfactor {

/// Dense real matrix, column-major storage. Logical indexing (i, j) is row-major in
/// the usual mathematical sense; storage order is an Eigen detail.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised when an iterative kernel does not converge or a decomposition fails.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thin SVD, a = left * diag(singular_values) * right^T, r = min(rows, cols).
struct SvdResult {
  Matrix left;             // m x r, orthonormal columns
  Vector singular_values;  // length r, nonincreasing, >= 0
  Matrix right;            // n x r, orthonormal columns
};

/// Throws std::invalid_argument if `a` is empty or holds a NaN/Inf entry.
void require_valid(const Matrix& a, const std::string& what);

double frobenius_norm(const Matrix& a);

/// Largest singular value by power iteration on a^T a.
///
/// Runs from the normalized all-ones vector and from a fixed pseudo-random
/// vector, stopping each once the eigen-residual ||a^T a x - mu x|| drops below
/// tol * mu, and returns the larger result. Throws NumericError after
/// 10 * max(rows, cols) + 200 iterations without convergence; callers that need
/// a value regardless can fall back to svd().
double operator_norm(const Matrix& a, double tol = 1e-12);

SvdResult svd(const Matrix& a);

/// Rank-k Eckart-Young truncation sum_{i<k} s_i u_i v_i^T.
Matrix truncate_rank(const SvdResult& s, int k);

/// Number of singular values above 1e-12 * s_1 (zero for the zero matrix).
int numerical_rank(const Vector& singular_values);
int numerical_rank(const Matrix& a);

// Symmetric eigen-extremes (dense solver). Input must be square; symmetry is
// assumed, only the lower triangle is read.
double max_eigenvalue_symmetric(const Matrix& a);
double min_eigenvalue_symmetric(const Matrix& a);

/// Frobenius inner product <a, b>_F = trace(a^T b).
double frobenius_inner(const Matrix& a, const Matrix& b);

}  // namespace tsfactor
