#pragma once

#include "tsfactor/linalg.hpp"
#include "tsfactor/noise.hpp"
#include "tsfactor/select.hpp"
#include "tsfactor/sobolev.hpp"
#include "tsfactor/structure.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsfactor {

inline constexpr const char* kConfigSchema = "tsfactor.config/1";

/// Invalid experiment configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { Unstructured, Periodic, Smooth };

std::string to_string(Scenario scenario);

/// How the selection penalty obtains ||Sigma_eps||_op.
enum class NoiseLevelSource { Known, Plugin, Fixed };

struct SignalParams {
  std::optional<double> snr;  // ||M||_F^2 / (d T) = snr * marginal noise variance
  int beta = 2;
  double ell = 1.0;
  std::optional<int> n_terms;  // smooth scenario; default (T - 2) / 2
  double c_beta_l = 1.0;
};

struct Grids {
  std::vector<int> horizons;
  std::vector<int> taus;
  std::vector<int> ranks;
  std::vector<int> n_freqs;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::Unstructured;
  int d = 0;
  int horizon = 0;
  std::optional<int> tau;     // periodic period; unstructured: must equal T if given
  int k = 1;
  std::optional<int> n_freq;  // smooth fit cutoff; default optimal_cutoff
  NoiseSpec noise;
  SignalParams signal;
  int replications = 1;
  std::uint64_t seed = 0;
  Grids grids;
  PenaltyParams penalty;
  NoiseLevelSource noise_level_source = NoiseLevelSource::Known;
  double rate_tolerance = 0.15;
  double cutoff_factor = 2.0;

  /// Checks every builder constraint; throws ConfigError naming the field.
  void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
nlohmann::json to_json(const ExperimentConfig& config);

/// One simulated data set X = M + eps with M = U V Lambda.
struct SimulatedData {
  Matrix m;
  Matrix x;
  Matrix u;  // d x k
  Matrix v;  // k x tau (unstructured, periodic) or the k x T smooth dictionary
  StructureBasis basis;  // structure the scenario fits with
};

/// Basis the scenario fits with: identity, periodic(tau) or trig(n_freq or N*).
StructureBasis scenario_basis(const ExperimentConfig& config);

/// Frequency cutoff of the smooth scenario: n_freq if set, else optimal_cutoff.
int smooth_cutoff(const ExperimentConfig& config);

/// Signal from derive_seed(seed, 0), noise from derive_seed(seed, 1).
SimulatedData simulate(const ExperimentConfig& config, std::uint64_t seed);

struct RiskEstimate {
  double mean;
  double std;  // sample standard deviation across replications
  int replications;
};

/// Monte-Carlo risk ||M^ - M||_F^2 / (d T) of rank-k fits with each basis in
/// `fit_bases`, all evaluated on the same replications. Replication r uses
/// seed derive_seed(config.seed, r).
std::vector<RiskEstimate> monte_carlo_risks(const ExperimentConfig& config,
                                            const std::vector<StructureBasis>& fit_bases,
                                            int threads);

/// Candidate grid of a selection config: periodic bases from grids.tau (or
/// trig bases from grids.n_freq in the smooth scenario) and ranks grids.k.
CandidateGrid selection_grid(const ExperimentConfig& config);

/// Penalty parameters with noise_level resolved from the configured source.
PenaltyParams resolve_penalty(const ExperimentConfig& config, const Matrix& x,
                              const CandidateGrid& grid);

struct RatePoint {
  int d;
  int horizon;
  int tau;
  int k;
  double mean_risk;
  double std_risk;
  double theoretical_rate;
  int replications;
};

struct LogLogFit {
  double slope;
  double intercept;
  double slope_stderr;
};

/// Ordinary least squares of log(y) on log(x). Needs >= 3 points.
LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

struct RateReport {
  Scenario scenario;
  std::vector<RatePoint> points;
  std::optional<LogLogFit> regression;  // sweep scenarios
  std::optional<int> optimal_n;         // smooth scenario
  std::optional<double> best_mean_risk;
  double tolerance;
  bool pass;
};

/// Unstructured / periodic: sweep grids.T and regress log mean risk on
/// log k(d + tau)/(d T), passing when |slope - 1| <= rate_tolerance.
/// Smooth: compare N in {1, N*/2, N*, 2N*, 4N*}, passing when the mean risk
/// at N* is within cutoff_factor of the best.
RateReport rate_check(const ExperimentConfig& config, int threads);

nlohmann::json to_json(const RateReport& report);

}  // namespace tsfactor
