#pragma once

#include "tsfactor/linalg.hpp"
#include "tsfactor/structure.hpp"

namespace tsfactor {

/// Fitted rank-k structured factorization M^ = U V Lambda.
struct FactorModel {
  Matrix u;            // d x k
  Matrix v;            // k x tau
  StructureBasis basis;
  Matrix m_tilde_hat;  // d x tau, equals u * v
  int rank;
};

/// Rank-k empirical risk minimizer in the projected space.
///
/// Projects x through the basis, truncates the SVD of the projection at k and
/// splits the result into balanced factors u = U_k diag(sqrt s), v = diag(sqrt s) V_k^T.
/// Requires 1 <= k <= min(d, tau).
FactorModel fit(const Matrix& x, const StructureBasis& basis, int k);

/// Same as fit() but reuses a precomputed SVD of the projected observations.
FactorModel fit_from_svd(const SvdResult& projected_svd, const StructureBasis& basis, int k);

/// expand(m_tilde_hat, basis): the d x T estimate of the signal.
Matrix predict(const FactorModel& model);

/// ||estimate - truth||_F^2 / (d T).
double risk(const Matrix& estimate, const Matrix& truth);

/// ||estimate - x||_F^2, unnormalized.
double empirical_risk(const Matrix& estimate, const Matrix& x);

}  // namespace tsfactor
