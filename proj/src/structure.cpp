#include "tsfactor/structure.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsfactor {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Identity: return "identity";
    case BasisKind::Periodic: return "periodic";
    case BasisKind::Trig: return "trig";
  }
  return "unknown";
}

StructureBasis::StructureBasis(BasisKind kind, int tau, int horizon, double c, Matrix rows)
    : kind_(kind),
      tau_(tau),
      horizon_(horizon),
      gram_constant_(c),
      rows_(std::make_shared<const Matrix>(std::move(rows))) {
  // Identity and periodic rows are exact 0/1 patterns; only the trig rows carry
  // rounding worth checking at construction.
  if (kind_ == BasisKind::Trig && gram_residual() > 1e-9 * c * tau) {
    throw NumericError("structure basis " + descriptor() +
                       " violates Lambda Lambda^T = c I (residual " +
                       std::to_string(gram_residual()) + ")");
  }
}

double StructureBasis::gram_residual() const {
  const Matrix& l = *rows_;
  return (l * l.transpose() - gram_constant_ * Matrix::Identity(tau_, tau_)).norm();
}

std::string StructureBasis::descriptor() const {
  switch (kind_) {
    case BasisKind::Identity: return "identity:" + std::to_string(horizon_);
    case BasisKind::Periodic:
      return "periodic:" + std::to_string(tau_) + ":" + std::to_string(horizon_);
    case BasisKind::Trig:
      return "trig:" + std::to_string(n_freq()) + ":" + std::to_string(horizon_);
  }
  return "unknown";
}

StructureBasis build_identity(int horizon) {
  if (horizon < 2) {
    throw std::invalid_argument("build_identity: horizon must be at least 2, got " +
                                std::to_string(horizon));
  }
  return StructureBasis(BasisKind::Identity, horizon, horizon, 1.0,
                        Matrix::Identity(horizon, horizon));
}

StructureBasis build_periodic(int tau, int horizon) {
  if (tau < 1 || horizon < 1) {
    throw std::invalid_argument("build_periodic: tau and horizon must be positive");
  }
  if (horizon % tau != 0) {
    throw std::invalid_argument("build_periodic: horizon " + std::to_string(horizon) +
                                " must be divisible by tau " + std::to_string(tau));
  }
  const int periods = horizon / tau;
  Matrix rows = Matrix::Zero(tau, horizon);
  for (int p = 0; p < periods; ++p) {
    rows.block(0, p * tau, tau, tau).setIdentity();
  }
  return StructureBasis(BasisKind::Periodic, tau, horizon, static_cast<double>(periods),
                        std::move(rows));
}

StructureBasis build_trig(int n_freq, int horizon) {
  if (n_freq < 0 || horizon < 1) {
    throw std::invalid_argument("build_trig: n_freq must be nonnegative and horizon positive");
  }
  if (2 * n_freq >= horizon) {
    throw std::invalid_argument("build_trig: need 2 * n_freq < horizon, got n_freq " +
                                std::to_string(n_freq) + ", horizon " + std::to_string(horizon));
  }
  const int tau = 2 * n_freq + 1;
  Matrix rows(tau, horizon);
  const double root2 = std::numbers::sqrt2;
  for (int t = 1; t <= horizon; ++t) {
    rows(0, t - 1) = 1.0;
    for (int n = 1; n <= n_freq; ++n) {
      const double angle = 2.0 * std::numbers::pi * n * t / horizon;
      rows(2 * n - 1, t - 1) = root2 * std::cos(angle);
      rows(2 * n, t - 1) = root2 * std::sin(angle);
    }
  }
  return StructureBasis(BasisKind::Trig, tau, horizon, static_cast<double>(horizon),
                        std::move(rows));
}

namespace {

int parse_positive_int(std::string_view text, const std::string& descriptor) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("basis descriptor '" + descriptor + "': bad integer '" +
                                std::string(text) + "'");
  }
  return value;
}

}  // namespace

StructureBasis parse_basis(const std::string& descriptor, int horizon) {
  const auto colon = descriptor.find(':');
  const std::string kind = descriptor.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  if (kind == "identity") {
    if (!arg.empty()) throw std::invalid_argument("basis descriptor 'identity' takes no argument");
    return build_identity(horizon);
  }
  if (kind == "periodic") return build_periodic(parse_positive_int(arg, descriptor), horizon);
  if (kind == "trig") return build_trig(parse_positive_int(arg, descriptor), horizon);
  throw std::invalid_argument("unknown basis kind '" + kind +
                              "' (expected identity, periodic:<tau> or trig:<N>)");
}

Matrix project(const Matrix& x, const StructureBasis& basis) {
  if (x.cols() != basis.horizon()) {
    throw std::invalid_argument("project: x has " + std::to_string(x.cols()) +
                                " columns, basis horizon is " + std::to_string(basis.horizon()));
  }
  if (basis.kind() == BasisKind::Identity) return x;
  return (x * basis.rows().transpose()) / basis.gram_constant();
}

Matrix expand(const Matrix& a_tilde, const StructureBasis& basis) {
  if (a_tilde.cols() != basis.tau()) {
    throw std::invalid_argument("expand: matrix has " + std::to_string(a_tilde.cols()) +
                                " columns, basis tau is " + std::to_string(basis.tau()));
  }
  if (basis.kind() == BasisKind::Identity) return a_tilde;
  return a_tilde * basis.rows();
}

}  // namespace tsfactor
