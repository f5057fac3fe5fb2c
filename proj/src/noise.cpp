#include "tsfactor/noise.hpp"

#include "tsfactor/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsfactor {

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::IidGaussian: return "iid";
    case NoiseKind::Ma1: return "ma1";
    case NoiseKind::Ar1: return "ar1";
  }
  return "unknown";
}

void NoiseSpec::validate() const {
  if (!std::isfinite(sigma) || !(sigma > 0.0)) {
    throw std::invalid_argument("noise: sigma must be positive and finite");
  }
  if (!std::isfinite(theta) || !std::isfinite(rho)) {
    throw std::invalid_argument("noise: theta and rho must be finite");
  }
  if (kind == NoiseKind::Ar1 && !(std::abs(rho) < 1.0)) {
    throw std::invalid_argument("noise: AR(1) requires |rho| < 1");
  }
}

namespace {

double draw(Rng& rng, Innovations law) {
  if (law == Innovations::Uniform) {
    // Unit variance on [-sqrt 3, sqrt 3].
    return std::numbers::sqrt3 * (2.0 * rng.uniform() - 1.0);
  }
  return rng.normal();
}

}  // namespace

Matrix sample_noise(const NoiseSpec& spec, int d, int horizon, std::uint64_t seed) {
  spec.validate();
  if (d < 1 || horizon < 1) {
    throw std::invalid_argument("sample_noise: d and horizon must be positive");
  }
  Matrix out(d, horizon);
  for (int i = 0; i < d; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    switch (spec.kind) {
      case NoiseKind::IidGaussian:
        for (int t = 0; t < horizon; ++t) out(i, t) = spec.sigma * draw(rng, spec.innovations);
        break;
      case NoiseKind::Ma1: {
        // eta_1..eta_T come first in the stream and the burn-in eta_0 last, so
        // theta = 0 reproduces the iid draws exactly.
        Vector eta(horizon);
        for (int t = 0; t < horizon; ++t) eta(t) = spec.sigma * draw(rng, spec.innovations);
        double previous = spec.sigma * draw(rng, spec.innovations);
        for (int t = 0; t < horizon; ++t) {
          out(i, t) = eta(t) - spec.theta * previous;
          previous = eta(t);
        }
        break;
      }
      case NoiseKind::Ar1: {
        const double innovation_sd = spec.sigma * std::sqrt(1.0 - spec.rho * spec.rho);
        double value = spec.sigma * draw(rng, spec.innovations);  // stationary start
        out(i, 0) = value;
        for (int t = 1; t < horizon; ++t) {
          value = spec.rho * value + innovation_sd * draw(rng, spec.innovations);
          out(i, t) = value;
        }
        break;
      }
    }
  }
  return out;
}

Matrix covariance_matrix(const NoiseSpec& spec, int horizon) {
  spec.validate();
  if (horizon < 1) throw std::invalid_argument("covariance_matrix: horizon must be positive");
  const double s2 = spec.sigma * spec.sigma;
  Matrix cov = Matrix::Zero(horizon, horizon);
  switch (spec.kind) {
    case NoiseKind::IidGaussian:
      cov.diagonal().setConstant(s2);
      break;
    case NoiseKind::Ma1:
      cov.diagonal().setConstant(s2 * (1.0 + spec.theta * spec.theta));
      for (int t = 0; t + 1 < horizon; ++t) {
        cov(t, t + 1) = -s2 * spec.theta;
        cov(t + 1, t) = -s2 * spec.theta;
      }
      break;
    case NoiseKind::Ar1:
      for (int i = 0; i < horizon; ++i) {
        for (int j = 0; j < horizon; ++j) {
          cov(i, j) = s2 * std::pow(spec.rho, std::abs(i - j));
        }
      }
      break;
  }
  return cov;
}

CovarianceSummary sigma_op_norm(const NoiseSpec& spec, int horizon) {
  spec.validate();
  if (horizon < 1) throw std::invalid_argument("sigma_op_norm: horizon must be positive");
  const double s2 = spec.sigma * spec.sigma;
  switch (spec.kind) {
    case NoiseKind::IidGaussian:
      return {s2, s2, true};
    case NoiseKind::Ma1: {
      // Eigenvalues of the tridiagonal Toeplitz matrix:
      // s2 (1 + theta^2 - 2 theta cos(l pi / (T + 1))), l = 1..T.
      const double theta = spec.theta;
      double best = 0.0;
      for (int l = 1; l <= horizon; ++l) {
        const double ev =
            s2 * (1.0 + theta * theta - 2.0 * theta * std::cos(l * std::numbers::pi / (horizon + 1)));
        best = std::max(best, ev);
      }
      const double bound = s2 * (1.0 + std::abs(theta)) * (1.0 + std::abs(theta));
      return {best, bound, true};
    }
    case NoiseKind::Ar1: {
      const double op = max_eigenvalue_symmetric(covariance_matrix(spec, horizon));
      const double r = std::abs(spec.rho);
      return {op, s2 * (1.0 + r) / (1.0 - r), false};
    }
  }
  throw std::logic_error("sigma_op_norm: unhandled noise kind");
}

double marginal_variance(const NoiseSpec& spec) {
  const double s2 = spec.sigma * spec.sigma;
  return spec.kind == NoiseKind::Ma1 ? s2 * (1.0 + spec.theta * spec.theta) : s2;
}

double projected_noise_norm_bound(const NoiseSpec& spec, const StructureBasis& basis) {
  return sigma_op_norm(spec, basis.horizon()).op_norm / basis.gram_constant();
}

}  // namespace tsfactor
