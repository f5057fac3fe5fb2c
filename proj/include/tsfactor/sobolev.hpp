#pragma once

#include "tsfactor/linalg.hpp"
#include "tsfactor/structure.hpp"

#include <cstdint>

namespace tsfactor {

/// Random smooth latent functions f_1..f_k drawn from the Sobolev ellipsoid
/// W(beta, L), represented by n_terms Fourier modes.
struct SmoothFactorSpec {
  int k = 1;
  int beta = 1;
  double ell = 1.0;  // radius L
  int n_terms = 1;

  void validate() const;
};

/// k x (2 n_terms + 1) real Fourier coefficients, columns ordered like the rows
/// of build_trig(n_terms, T): constant, then (cos, sin) pairs for n = 1..n_terms.
///
/// The constant term is standard normal. Mode n draws centered normals with sd
/// n^{-beta - 1/2}; the row is then rescaled so that
/// sum_n (2 pi n)^{2 beta} (a_n^2 + b_n^2) = u L^2 with u ~ Uniform(0, 1].
/// Row l uses the stream derive_seed(seed, l).
Matrix gen_smooth_coefficients(const SmoothFactorSpec& spec, std::uint64_t seed);

/// sum_n (2 pi n)^{2 beta} (a_n^2 + b_n^2) for one coefficient row.
double ellipsoid_weight(const Vector& coefficients, int beta);

/// W with W(l, t) = f_l(t / horizon), t = 1..horizon. Requires
/// horizon >= 2 n_terms + 2.
Matrix gen_smooth_dictionary(const SmoothFactorSpec& spec, int horizon, std::uint64_t seed);

/// Empirical truncation bias ||W - project(W) Lambda||_F^2 / (k T) of a dictionary
/// onto the span of a trigonometric basis.
double bias_of_truncation(const Matrix& w, const StructureBasis& basis);

/// Frequency cutoff balancing truncation bias and variance:
/// floor((d T C / (||Sigma||_op k))^{1/(2 beta + 1)}), at least 1, clamped so
/// that 2N < horizon.
int optimal_cutoff(int beta, double c_beta_l, int d, int horizon, int k, double sigma_op);

}  // namespace tsfactor
