#include "tsfactor/estimator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tsfactor {

FactorModel fit_from_svd(const SvdResult& projected_svd, const StructureBasis& basis, int k) {
  const auto d = projected_svd.left.rows();
  const auto max_rank = std::min<Eigen::Index>(d, basis.tau());
  if (k < 1 || k > max_rank) {
    throw std::invalid_argument("fit: rank " + std::to_string(k) + " outside [1, min(d, tau)] = [1, " +
                                std::to_string(max_rank) + "]");
  }
  if (projected_svd.right.rows() != basis.tau()) {
    throw std::invalid_argument("fit: projected SVD does not match basis tau");
  }
  const Vector root = projected_svd.singular_values.head(k).cwiseSqrt();
  Matrix u = projected_svd.left.leftCols(k) * root.asDiagonal();
  Matrix v = root.asDiagonal() * projected_svd.right.leftCols(k).transpose();
  Matrix m_tilde_hat = u * v;
  return FactorModel{std::move(u), std::move(v), basis, std::move(m_tilde_hat), k};
}

FactorModel fit(const Matrix& x, const StructureBasis& basis, int k) {
  require_valid(x, "fit");
  const auto max_rank = std::min<Eigen::Index>(x.rows(), basis.tau());
  if (k < 1 || k > max_rank) {
    throw std::invalid_argument("fit: rank " + std::to_string(k) + " outside [1, min(d, tau)] = [1, " +
                                std::to_string(max_rank) + "]");
  }
  return fit_from_svd(svd(project(x, basis)), basis, k);
}

Matrix predict(const FactorModel& model) { return expand(model.m_tilde_hat, model.basis); }

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

}  // namespace

double risk(const Matrix& estimate, const Matrix& truth) {
  require_same_shape(estimate, truth, "risk");
  return (estimate - truth).squaredNorm() / static_cast<double>(estimate.size());
}

double empirical_risk(const Matrix& estimate, const Matrix& x) {
  require_same_shape(estimate, x, "empirical_risk");
  return (estimate - x).squaredNorm();
}

}  // namespace tsfactor
