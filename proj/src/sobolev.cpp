#include "tsfactor/sobolev.hpp"

#include "tsfactor/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tsfactor {

void SmoothFactorSpec::validate() const {
  if (k < 1) throw std::invalid_argument("smooth factors: k must be positive");
  if (beta < 1) throw std::invalid_argument("smooth factors: beta must be a positive integer");
  if (!std::isfinite(ell) || !(ell > 0.0)) {
    throw std::invalid_argument("smooth factors: ell must be positive");
  }
  if (n_terms < 0) throw std::invalid_argument("smooth factors: n_terms must be nonnegative");
}

double ellipsoid_weight(const Vector& coefficients, int beta) {
  double total = 0.0;
  const Eigen::Index n_terms = (coefficients.size() - 1) / 2;
  for (Eigen::Index n = 1; n <= n_terms; ++n) {
    const double a = coefficients(2 * n - 1);
    const double b = coefficients(2 * n);
    total += std::pow(2.0 * std::numbers::pi * static_cast<double>(n), 2 * beta) * (a * a + b * b);
  }
  return total;
}

Matrix gen_smooth_coefficients(const SmoothFactorSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int width = 2 * spec.n_terms + 1;
  Matrix coeffs = Matrix::Zero(spec.k, width);
  for (int l = 0; l < spec.k; ++l) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(l)));
    coeffs(l, 0) = rng.normal();
    for (int n = 1; n <= spec.n_terms; ++n) {
      const double sd = std::pow(static_cast<double>(n), -spec.beta - 0.5);
      coeffs(l, 2 * n - 1) = sd * rng.normal();
      coeffs(l, 2 * n) = sd * rng.normal();
    }
    if (spec.n_terms == 0) continue;
    const double weight = ellipsoid_weight(coeffs.row(l).transpose(), spec.beta);
    if (weight > 0.0) {
      const double u = rng.uniform_open_left();
      coeffs.row(l).tail(width - 1) *= std::sqrt(u * spec.ell * spec.ell / weight);
    }
  }
  return coeffs;
}

Matrix gen_smooth_dictionary(const SmoothFactorSpec& spec, int horizon, std::uint64_t seed) {
  spec.validate();
  if (horizon < 2 * spec.n_terms + 2) {
    throw std::invalid_argument("gen_smooth_dictionary: horizon " + std::to_string(horizon) +
                                " must be at least 2 * n_terms + 2 = " +
                                std::to_string(2 * spec.n_terms + 2));
  }
  return gen_smooth_coefficients(spec, seed) * build_trig(spec.n_terms, horizon).rows();
}

double bias_of_truncation(const Matrix& w, const StructureBasis& basis) {
  if (basis.kind() != BasisKind::Trig) {
    throw std::invalid_argument("bias_of_truncation: basis must be trigonometric, got " +
                                basis.descriptor());
  }
  const Matrix residual = w - expand(project(w, basis), basis);
  return residual.squaredNorm() / static_cast<double>(w.size());
}

namespace {

// Largest integer n in [0, cap] with n^p <= x, for x >= 0.
long integer_root_floor(double x, int p, long cap) {
  const double estimate = std::floor(std::pow(x, 1.0 / p));
  if (estimate > static_cast<double>(cap) + 1.0) return cap;
  long n = static_cast<long>(estimate);
  while (n > 0 && std::pow(static_cast<double>(n), p) > x) --n;
  while (n < cap && std::pow(static_cast<double>(n + 1), p) <= x) ++n;
  return std::min(n, cap);
}

}  // namespace

int optimal_cutoff(int beta, double c_beta_l, int d, int horizon, int k, double sigma_op) {
  if (beta < 1 || !(c_beta_l > 0.0) || d < 1 || horizon < 1 || k < 1 || !(sigma_op > 0.0)) {
    throw std::invalid_argument("optimal_cutoff: all arguments must be positive");
  }
  const double ratio = static_cast<double>(d) * horizon * c_beta_l / (sigma_op * k);
  const long cap = (horizon - 1) / 2;
  long n = std::isfinite(ratio) ? integer_root_floor(ratio, 2 * beta + 1, cap) : cap;
  return static_cast<int>(std::max(n, 1L));
}

}  // namespace tsfactor
