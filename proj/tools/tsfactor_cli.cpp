// tsfactor: simulate, fit, select and rate-check structured low-rank models.
//
// Exit codes: 0 success, 2 config/argument error, 3 numeric failure, 4 I/O error.

#include "tsfactor/commands.hpp"
#include "tsfactor/matrix_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

tsfactor::ExperimentConfig load_config(const std::string& path, std::optional<long long> seed) {
  tsfactor::ExperimentConfig config = tsfactor::parse_config_text(tsfactor::read_text(path));
  if (seed) {
    if (*seed < 0) throw tsfactor::ConfigError("--seed must be nonnegative");
    config.seed = static_cast<std::uint64_t>(*seed);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured low-rank factorization of multivariate time series"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<long long> seed;
  int threads = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "Experiment config (JSON)");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--threads", threads, "Worker threads")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "Generate M, X and ground-truth factors");
  add_common(simulate, true);

  tsfactor::FitRequest fit_request;
  std::string input_path;
  std::string truth_path;
  auto* fit = app.add_subcommand("fit", "Fit a rank-k structured factorization to a CSV matrix");
  add_common(fit, false);
  fit->add_option("--input", input_path, "Observation matrix X (CSV)")->required();
  fit->add_option("--basis", fit_request.basis, "identity | periodic:<tau> | trig:<N>")->required();
  fit->add_option("--k", fit_request.k, "Rank")->required()->check(CLI::PositiveNumber);
  fit->add_option("--truth", truth_path, "Optional signal matrix M (CSV) for risk reporting");

  auto* select = app.add_subcommand("select", "Penalized selection of (tau, k)");
  add_common(select, true);
  select->add_option("--input", input_path, "Observation matrix X (CSV)")->required();

  auto* rate = app.add_subcommand("rate-check", "Monte-Carlo verification of risk rates");
  add_common(rate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) {
      tsfactor::run_simulate(load_config(config_path, seed), out_dir);
    } else if (fit->parsed()) {
      fit_request.input = input_path;
      if (!truth_path.empty()) fit_request.truth = truth_path;
      tsfactor::run_fit(fit_request, out_dir);
    } else if (select->parsed()) {
      tsfactor::run_select(input_path, load_config(config_path, seed), out_dir, threads);
    } else if (rate->parsed()) {
      const auto report = tsfactor::run_rate_check(load_config(config_path, seed), out_dir, threads);
      std::cout << "rate-check " << tsfactor::to_string(report.scenario) << ": "
                << (report.pass ? "pass" : "FAIL") << '\n';
    }
  } catch (const tsfactor::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tsfactor::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const tsfactor::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
