#pragma once

#include "tsfactor/estimator.hpp"
#include "tsfactor/linalg.hpp"
#include "tsfactor/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsfactor {

/// Candidate structures and ranks. All bases share one horizon; ranks are
/// ascending and distinct.
struct CandidateGrid {
  std::vector<StructureBasis> bases;
  std::vector<int> ranks;

  void validate() const;
};

/// Penalty pen(tau, k) = (c_pen k / lambda) (d + tau + s') noise_level, evaluated at
/// the shifted confidence level s' = s + tau + k.
struct PenaltyParams {
  double lambda = 0.5;       // in (0, 1)
  double c_pen = 2.0;        // stands in for the non-explicit concentration constants
  double noise_level = 1.0;  // ||Sigma_eps||_op, known or plug-in
  double s = 1.0;            // confidence parameter

  void validate() const;
};

double penalty(const PenaltyParams& params, int d, int tau, int k);

struct SelectionRecord {
  std::size_t basis_index;
  std::string basis;  // descriptor
  int tau;
  int k;
  double empirical_risk;
  double penalty;
  double score;
  bool chosen;
};

struct SelectionResult {
  std::size_t chosen_tau_index;  // index into CandidateGrid::bases
  int chosen_k;
  std::vector<SelectionRecord> table;  // basis-major, ranks ascending
  /// (basis index, k) pairs skipped because k > min(d, tau).
  std::vector<std::pair<std::size_t, int>> skipped;
  FactorModel fitted;
};

/// Fits every feasible (basis, k) and returns the penalized empirical risk
/// minimizer. Ties go to the smaller k, then the smaller tau. Throws
/// std::invalid_argument if no pair is feasible.
SelectionResult select(const Matrix& x, const CandidateGrid& grid, const PenaltyParams& params,
                       int threads = 1);

/// Residual variance ||X - M^||_F^2 / (d T) of the largest candidate (largest tau,
/// largest feasible rank), a plug-in proxy for the noise level.
double calibrate_noise_level(const Matrix& x, const CandidateGrid& grid);

}  // namespace tsfactor
