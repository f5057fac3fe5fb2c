#pragma once

#include "tsfactor/linalg.hpp"
#include "tsfactor/structure.hpp"

#include <cstdint>
#include <string>

namespace tsfactor {

enum class NoiseKind { IidGaussian, Ma1, Ar1 };
enum class Innovations { Gaussian, Uniform };

/// Row law of the noise matrix. Rows are independent copies of a length-T
/// stationary sequence:
///   IidGaussian  eps_t = sigma * z_t
///   Ma1          eps_t = eta_t - theta * eta_{t-1},      sd(eta) = sigma
///   Ar1          eps_t = rho * eps_{t-1} + eta_t,         sd(eps_t) = sigma
/// `sigma` is the innovation sd for Ma1 and the marginal sd for Ar1, so that the
/// row covariance is exactly covariance_matrix(spec, T) in every case.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::IidGaussian;
  double sigma = 1.0;
  double theta = 0.0;  // Ma1 only
  double rho = 0.0;    // Ar1 only, |rho| < 1
  Innovations innovations = Innovations::Gaussian;

  static NoiseSpec iid(double sigma) { return {NoiseKind::IidGaussian, sigma, 0.0, 0.0}; }
  static NoiseSpec ma1(double theta, double sigma) { return {NoiseKind::Ma1, sigma, theta, 0.0}; }
  static NoiseSpec ar1(double rho, double sigma) { return {NoiseKind::Ar1, sigma, 0.0, rho}; }

  /// Throws std::invalid_argument on sigma <= 0, |rho| >= 1 or non-finite parameters.
  void validate() const;
};

std::string to_string(NoiseKind kind);

struct CovarianceSummary {
  double op_norm;  // ||Sigma_eps||_op
  double bound;    // closed-form upper bound
  bool exact;      // op_norm is analytic rather than numerical
};

/// d x horizon noise matrix; row i draws from the stream derive_seed(seed, i).
/// Ma1 with theta = 0 returns the same matrix as IidGaussian for the same seed.
Matrix sample_noise(const NoiseSpec& spec, int d, int horizon, std::uint64_t seed);

/// T x T row covariance: sigma^2 I, sigma^2 tridiag(-theta, 1 + theta^2, -theta) or
/// sigma^2 rho^{|i-j|}.
Matrix covariance_matrix(const NoiseSpec& spec, int horizon);

CovarianceSummary sigma_op_norm(const NoiseSpec& spec, int horizon);

/// Sigma_eps(t, t), the per-entry noise variance.
double marginal_variance(const NoiseSpec& spec);

/// Operator-norm bound on the row covariance of eps Lambda^+:
/// ||Sigma_eps||_op * ||(Lambda^+)^T Lambda^+||_op = ||Sigma_eps||_op / c.
double projected_noise_norm_bound(const NoiseSpec& spec, const StructureBasis& basis);

}  // namespace tsfactor
