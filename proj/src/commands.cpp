#include "tsfactor/commands.hpp"

#include "tsfactor/estimator.hpp"
#include "tsfactor/matrix_io.hpp"

namespace tsfactor {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace

void run_simulate(const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  const SimulatedData data = simulate(config, config.seed);
  const CovarianceSummary cov = sigma_op_norm(config.noise, config.horizon);

  ensure_dir(out_dir);
  write_csv(out_dir / "M.csv", data.m);
  write_csv(out_dir / "X.csv", data.x);
  write_csv(out_dir / "U.csv", data.u);
  write_csv(out_dir / "V.csv", data.v);

  json manifest;
  manifest["schema"] = "tsfactor.manifest/1";
  manifest["command"] = "simulate";
  manifest["config"] = to_json(config);
  manifest["seed"] = config.seed;
  manifest["d"] = config.d;
  manifest["T"] = config.horizon;
  manifest["k"] = config.k;
  manifest["basis"] = data.basis.descriptor();
  manifest["tau"] = data.basis.tau();
  manifest["noise_op_norm"] = cov.op_norm;
  manifest["noise_op_norm_bound"] = cov.bound;
  manifest["noise_op_norm_exact"] = cov.exact;
  manifest["files"] = {{"M", "M.csv"}, {"X", "X.csv"}, {"U", "U.csv"}, {"V", "V.csv"}};
  write_json(out_dir / "manifest.json", manifest);
}

void run_fit(const FitRequest& request, const fs::path& out_dir) {
  const Matrix x = read_csv(request.input);
  const StructureBasis basis = parse_basis(request.basis, static_cast<int>(x.cols()));
  const FactorModel model = fit(x, basis, request.k);
  const Matrix m_hat = predict(model);

  json summary;
  summary["schema"] = "tsfactor.fit/1";
  summary["input"] = request.input.string();
  summary["basis"] = basis.descriptor();
  summary["d"] = x.rows();
  summary["T"] = x.cols();
  summary["tau"] = basis.tau();
  summary["k"] = request.k;
  summary["empirical_risk"] = empirical_risk(m_hat, x);
  summary["normalized_empirical_risk"] = risk(m_hat, x);
  summary["rank"] = numerical_rank(model.m_tilde_hat);
  summary["gram_residual"] = basis.gram_residual();
  if (request.truth) {
    const Matrix truth = read_csv(*request.truth);
    summary["risk_vs_truth"] = risk(m_hat, truth);
  }

  ensure_dir(out_dir);
  write_csv(out_dir / "M_hat.csv", m_hat);
  write_csv(out_dir / "U.csv", model.u);
  write_csv(out_dir / "V.csv", model.v);
  write_json(out_dir / "fit.json", summary);
}

void run_select(const fs::path& input, const ExperimentConfig& config, const fs::path& out_dir,
                int threads) {
  const Matrix x = read_csv(input);
  if (x.cols() != config.horizon) {
    throw std::invalid_argument("select: input has " + std::to_string(x.cols()) +
                                " columns but config T is " + std::to_string(config.horizon));
  }
  const CandidateGrid grid = selection_grid(config);
  const PenaltyParams params = resolve_penalty(config, x, grid);
  const SelectionResult result = select(x, grid, params, threads);

  std::string table = "basis,tau,k,empirical_risk,penalty,score,chosen\n";
  for (const auto& r : result.table) {
    table += r.basis + ',' + std::to_string(r.tau) + ',' + std::to_string(r.k) + ',' +
             format_double(r.empirical_risk) + ',' + format_double(r.penalty) + ',' +
             format_double(r.score) + ',' + (r.chosen ? "1" : "0") + '\n';
  }

  const auto& winner = grid.bases[result.chosen_tau_index];
  json summary;
  summary["schema"] = "tsfactor.selection/1";
  summary["input"] = input.string();
  summary["chosen_basis"] = winner.descriptor();
  summary["chosen_tau"] = winner.tau();
  summary["chosen_k"] = result.chosen_k;
  summary["noise_level"] = params.noise_level;
  summary["penalty"] = {{"lambda", params.lambda}, {"c_pen", params.c_pen}, {"s", params.s}};
  for (const auto& r : result.table) {
    if (r.chosen) {
      summary["empirical_risk"] = r.empirical_risk;
      summary["score"] = r.score;
    }
  }
  json skipped = json::array();
  for (const auto& [b, k] : result.skipped) {
    skipped.push_back({{"basis", grid.bases[b].descriptor()}, {"k", k}});
  }
  summary["skipped"] = skipped;

  ensure_dir(out_dir);
  write_text(out_dir / "selection.csv", table);
  write_json(out_dir / "selection.json", summary);
}

RateReport run_rate_check(const ExperimentConfig& config, const fs::path& out_dir, int threads) {
  RateReport report = rate_check(config, threads);
  json j = to_json(report);
  j["config"] = to_json(config);
  ensure_dir(out_dir);
  write_json(out_dir / "rate_report.json", j);
  return report;
}

}  // namespace tsfactor
