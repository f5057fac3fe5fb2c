#pragma once

#include "tsfactor/linalg.hpp"

#include <memory>
#include <string>

namespace tsfactor {

enum class BasisKind { Identity, Periodic, Trig };

std::string to_string(BasisKind kind);

/// Known structure matrix Lambda (tau x T) with Lambda Lambda^T = c I_tau.
///
/// Immutable once built; obtain one from build_identity, build_periodic or
/// build_trig. For a Trig basis `tau` is 2 * n_freq + 1.
class StructureBasis {
public:
  BasisKind kind() const { return kind_; }
  int tau() const { return tau_; }
  int horizon() const { return horizon_; }
  /// The constant c with Lambda Lambda^T = c I_tau.
  double gram_constant() const { return gram_constant_; }
  /// Number of frequencies N of a Trig basis, 0 otherwise.
  int n_freq() const { return kind_ == BasisKind::Trig ? (tau_ - 1) / 2 : 0; }
  const Matrix& rows() const { return *rows_; }

  /// ||Lambda Lambda^T - c I||_F.
  double gram_residual() const;

  /// Short textual descriptor: "identity:T", "periodic:tau:T" or "trig:N:T".
  std::string descriptor() const;

private:
  friend StructureBasis build_identity(int);
  friend StructureBasis build_periodic(int, int);
  friend StructureBasis build_trig(int, int);

  StructureBasis(BasisKind kind, int tau, int horizon, double c, Matrix rows);

  BasisKind kind_;
  int tau_;
  int horizon_;
  double gram_constant_;
  std::shared_ptr<const Matrix> rows_;
};

/// Lambda = I_T. Requires horizon >= 2.
StructureBasis build_identity(int horizon);

/// Lambda = (I_tau | ... | I_tau), horizon / tau copies; c = horizon / tau.
StructureBasis build_periodic(int tau, int horizon);

/// Real trigonometric basis on the grid t = 1..horizon: a constant row, then for
/// n = 1..n_freq the rows sqrt(2) cos(2 pi n t / T) and sqrt(2) sin(2 pi n t / T).
/// Requires 2 * n_freq < horizon; c = horizon.
StructureBasis build_trig(int n_freq, int horizon);

/// Parses a descriptor such as "identity", "periodic:12" or "trig:3" against
/// a known horizon. Throws std::invalid_argument on malformed input.
StructureBasis parse_basis(const std::string& descriptor, int horizon);

/// X~ = X Lambda^+ = X Lambda^T / c. Requires x.cols() == horizon.
Matrix project(const Matrix& x, const StructureBasis& basis);

/// A~ Lambda. Requires a_tilde.cols() == tau.
Matrix expand(const Matrix& a_tilde, const StructureBasis& basis);

}  // namespace tsfactor
