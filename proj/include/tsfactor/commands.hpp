#pragma once

#include "tsfactor/experiment.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace tsfactor {

// File-producing command implementations behind the CLI. Every command writes
// into `out_dir` (created if missing) and produces byte-identical files for
// identical inputs, seed and thread count.

/// M.csv, X.csv, U.csv, V.csv and manifest.json.
void run_simulate(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct FitRequest {
  std::filesystem::path input;
  std::string basis;  // descriptor, e.g. "periodic:12"
  int k = 1;
  std::optional<std::filesystem::path> truth;  // optional M.csv for risk reporting
};

/// M_hat.csv, U.csv, V.csv and fit.json.
void run_fit(const FitRequest& request, const std::filesystem::path& out_dir);

/// selection.csv (full score table) and selection.json (winner summary).
void run_select(const std::filesystem::path& input, const ExperimentConfig& config,
                const std::filesystem::path& out_dir, int threads);

/// rate_report.json. Returns the report so callers can act on `pass`.
RateReport run_rate_check(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                          int threads);

}  // namespace tsfactor
