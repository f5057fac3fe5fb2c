#include "tsfactor/commands.hpp"
#include "tsfactor/experiment.hpp"
#include "tsfactor/matrix_io.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

using namespace tsfactor;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tsfactor_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json periodic_config() {
  return {{"scenario", "periodic"}, {"d", 6},  {"T", 24},
          {"tau", 6},               {"k", 2},  {"noise", {{"kind", "iid"}, {"sigma", 0.5}}},
          {"seed", 7},              {"grids", {{"tau", {3, 6, 12, 24}}, {"k", {1, 2, 3}}}}};
}

bool bit_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST(Csv, RoundTripIsBitExact) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> exponent(-300, 300);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m(1 + trial % 5, 1 + trial % 7);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(gen) * std::pow(10.0, exponent(gen));
    m(0, 0) = trial % 2 == 0 ? std::numeric_limits<double>::denorm_min() : -0.0;
    EXPECT_TRUE(bit_equal(parse_csv(to_csv(m)), m));
  }
}

TEST(Csv, FormatIsPlainRectangular) {
  Matrix m(2, 2);
  m << 1.0, 0.1, -2.5, 1e-20;
  EXPECT_EQ(to_csv(m), "1,0.10000000000000001\n-2.5,9.9999999999999995e-21\n");
}

TEST(Csv, ParseErrors) {
  EXPECT_THROW(parse_csv(""), IoError);
  EXPECT_THROW(parse_csv("1,2\n3\n"), IoError);
  EXPECT_THROW(parse_csv("1,abc\n"), IoError);
  EXPECT_THROW(parse_csv("1,nan\n"), IoError);
  EXPECT_THROW(parse_csv("1,,2\n"), IoError);
  EXPECT_EQ(parse_csv(" 1 , 2\r\n3,4\n\n").rows(), 2);
  EXPECT_THROW(read_csv("/nonexistent/file.csv"), IoError);
}

TEST(Config, ParsesAndEchoes) {
  const ExperimentConfig cfg = parse_config(periodic_config());
  EXPECT_EQ(cfg.scenario, Scenario::Periodic);
  EXPECT_EQ(*cfg.tau, 6);
  EXPECT_EQ(cfg.noise.sigma, 0.5);
  EXPECT_EQ(cfg.seed, 7u);
  // The echo parses back to the same config.
  const ExperimentConfig again = parse_config(to_json(cfg));
  EXPECT_EQ(to_json(again), to_json(cfg));
}

TEST(Config, StrictParsing) {
  auto expect_field_error = [](json j, const std::string& field) {
    try {
      parse_config(j);
      FAIL() << "expected ConfigError for " << field;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find("'" + field + "'"), std::string::npos) << e.what();
    }
  };
  json unknown = periodic_config();
  unknown["colour"] = "red";
  expect_field_error(unknown, "colour");

  json nested = periodic_config();
  nested["noise"]["scale"] = 1.0;
  expect_field_error(nested, "noise.scale");

  json divisibility = periodic_config();
  divisibility["tau"] = 5;
  expect_field_error(divisibility, "tau");

  json rho = periodic_config();
  rho["noise"] = {{"kind", "ar1"}, {"rho", 1.5}};
  expect_field_error(rho, "noise");

  json wrong_type = periodic_config();
  wrong_type["d"] = "six";
  expect_field_error(wrong_type, "d");

  json rank = periodic_config();
  rank["k"] = 7;
  expect_field_error(rank, "k");

  json trig = {{"scenario", "smooth"}, {"d", 4}, {"T", 10}, {"n_freq", 5}};
  expect_field_error(trig, "n_freq");

  EXPECT_THROW(parse_config_text("{not json"), ConfigError);
}

TEST(Simulate, PeriodicSignalAndFactors) {
  const ExperimentConfig cfg = parse_config(periodic_config());
  const SimulatedData data = simulate(cfg, 11);
  for (int t = 0; t + 6 < 24; ++t) EXPECT_EQ(data.m.col(t), data.m.col(t + 6));
  EXPECT_LE((expand(data.u * data.v, data.basis) - data.m).norm(), 1e-12 * data.m.norm());
  EXPECT_EQ(data.u.cols(), 2);
  EXPECT_EQ(data.v.cols(), 6);
}

TEST(Simulate, SnrScaling) {
  json j = periodic_config();
  j["signal"] = {{"snr", 10.0}};
  const ExperimentConfig cfg = parse_config(j);
  const SimulatedData data = simulate(cfg, 3);
  EXPECT_NEAR(data.m.squaredNorm() / data.m.size(), 10.0 * 0.25, 1e-12);
}

TEST(Simulate, SmoothScenarioUsesCutoff) {
  const json j = {{"scenario", "smooth"}, {"d", 8},  {"T", 64},
                  {"k", 2},               {"noise", {{"sigma", 0.5}}},
                  {"signal", {{"beta", 2}, {"ell", 2.0}, {"n_terms", 20}}}};
  const ExperimentConfig cfg = parse_config(j);
  const int expected = optimal_cutoff(2, 1.0, 8, 64, 2, 0.25);
  EXPECT_EQ(smooth_cutoff(cfg), expected);
  const SimulatedData data = simulate(cfg, 5);
  EXPECT_EQ(data.basis.n_freq(), expected);
  for (Eigen::Index i = 0; i < data.u.rows(); ++i) EXPECT_NEAR(data.u.row(i).norm(), 1.0, 1e-12);
  EXPECT_LE((data.u * data.v - data.m).norm(), 1e-12 * data.m.norm());
}

TEST(FitLogLog, RecoversExactPowerLaw) {
  const std::vector<double> x{1, 2, 4, 8};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
  const LogLogFit f = fit_log_log(x, y);
  EXPECT_NEAR(f.slope, 1.7, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
  EXPECT_NEAR(f.slope_stderr, 0.0, 1e-10);
  EXPECT_THROW(fit_log_log({1, 2}, {1, 2}), std::invalid_argument);
}

TEST(Commands, SimulateWritesManifestAndIsDeterministic) {
  const fs::path a = scratch_dir("sim_a");
  const fs::path b = scratch_dir("sim_b");
  json j = periodic_config();
  j["noise"] = {{"kind", "iid"}, {"sigma", 0.5}};
  const ExperimentConfig cfg = parse_config(j);
  run_simulate(cfg, a);
  run_simulate(cfg, b);
  for (const char* f : {"M.csv", "X.csv", "U.csv", "V.csv", "manifest.json"}) {
    EXPECT_EQ(read_text(a / f), read_text(b / f)) << f;
  }
  const json manifest = json::parse(read_text(a / "manifest.json"));
  EXPECT_EQ(manifest["noise_op_norm"].get<double>(), 0.25);
  EXPECT_EQ(manifest["basis"], "periodic:6:24");
  const Matrix m = read_csv(a / "M.csv");
  for (int t = 0; t + 6 < 24; ++t) EXPECT_EQ(m.col(t), m.col(t + 6));
}

TEST(Commands, FitRecoversNoiselessSignal) {
  const fs::path sim = scratch_dir("fit_sim");
  const fs::path out = scratch_dir("fit_out");
  json j = periodic_config();
  j["noise"] = {{"kind", "iid"}, {"sigma", 0.5}};
  run_simulate(parse_config(j), sim);
  // Use the noiseless signal as the observation.
  run_fit({sim / "M.csv", "periodic:6", 2, sim / "M.csv"}, out);
  const json summary = json::parse(read_text(out / "fit.json"));
  EXPECT_LE(summary["risk_vs_truth"].get<double>(), 1e-9);
  EXPECT_EQ(summary["rank"].get<int>(), 2);
  EXPECT_EQ(summary["gram_residual"].get<double>(), 0.0);
}

TEST(Commands, FitOutputRoundTripsBitForBit) {
  const fs::path sim = scratch_dir("rt_sim");
  const fs::path out = scratch_dir("rt_out");
  run_simulate(parse_config(periodic_config()), sim);
  run_fit({sim / "X.csv", "periodic:6", 6, std::nullopt}, out);

  const Matrix x = read_csv(sim / "X.csv");
  const FactorModel model = fit(x, build_periodic(6, 24), 6);
  EXPECT_TRUE(bit_equal(read_csv(out / "M_hat.csv"), predict(model)));
  EXPECT_TRUE(bit_equal(read_csv(out / "U.csv"), model.u));
  EXPECT_TRUE(bit_equal(read_csv(out / "V.csv"), model.v));
  // k = min(d, tau): the estimate is the plain projection expand(project(X)).
  const StructureBasis b = build_periodic(6, 24);
  EXPECT_LE((read_csv(out / "M_hat.csv") - expand(project(x, b), b)).norm(), 1e-12 * x.norm());
}

TEST(Commands, FitDimensionMismatch) {
  const fs::path sim = scratch_dir("mm_sim");
  run_simulate(parse_config(periodic_config()), sim);
  EXPECT_THROW(run_fit({sim / "X.csv", "periodic:5", 1, std::nullopt}, scratch_dir("mm_out")),
               std::invalid_argument);
}

TEST(Commands, SelectWritesTableAndWinner) {
  const fs::path sim = scratch_dir("sel_sim");
  const fs::path out = scratch_dir("sel_out");
  json j = periodic_config();
  j["noise"] = {{"kind", "iid"}, {"sigma", 0.05}};
  j["signal"] = {{"snr", 100.0}};
  const ExperimentConfig cfg = parse_config(j);
  run_simulate(cfg, sim);
  run_select(sim / "X.csv", cfg, out, 2);
  const json summary = json::parse(read_text(out / "selection.json"));
  EXPECT_EQ(summary["chosen_tau"].get<int>(), 6);
  EXPECT_EQ(summary["chosen_k"].get<int>(), 2);
  const std::string table = read_text(out / "selection.csv");
  EXPECT_EQ(table.rfind("basis,tau,k,empirical_risk,penalty,score,chosen\n", 0), 0u);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 1 + 4 * 3);
}

TEST(Commands, SelectEmptyGrid) {
  const fs::path sim = scratch_dir("empty_sim");
  json j = periodic_config();
  j["grids"] = {{"tau", {1}}, {"k", {2, 3}}};
  const ExperimentConfig cfg = parse_config(j);
  run_simulate(cfg, sim);
  EXPECT_THROW(run_select(sim / "X.csv", cfg, scratch_dir("empty_out"), 1), std::invalid_argument);
}

TEST(Commands, RateCheckNeedsFourPoints) {
  json j = {{"scenario", "unstructured"}, {"d", 5}, {"T", 20}, {"k", 1},
            {"grids", {{"T", {10, 20, 40}}}}};
  EXPECT_THROW(run_rate_check(parse_config(j), scratch_dir("rc3"), 1), ConfigError);
}

TEST(Commands, RateCheckReportIsDeterministicAcrossRuns) {
  const json j = {{"scenario", "periodic"},
                  {"d", 6},
                  {"T", 24},
                  {"tau", 4},
                  {"k", 1},
                  {"replications", 4},
                  {"seed", 3},
                  {"noise", {{"sigma", 0.3}}},
                  {"grids", {{"T", {24, 48, 96, 192}}}}};
  const ExperimentConfig cfg = parse_config(j);
  const fs::path a = scratch_dir("rc_a");
  const fs::path b = scratch_dir("rc_b");
  const RateReport report = run_rate_check(cfg, a, 2);
  run_rate_check(cfg, b, 2);
  EXPECT_EQ(read_text(a / "rate_report.json"), read_text(b / "rate_report.json"));
  ASSERT_EQ(report.points.size(), 4u);
  for (const auto& p : report.points) {
    EXPECT_GE(p.mean_risk, 0.0);
    EXPECT_EQ(p.replications, 4);
  }
  EXPECT_TRUE(report.regression.has_value());
}

#ifdef TSFACTOR_CLI_PATH
namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TSFACTOR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir("cli");
  write_text(dir / "good.json", periodic_config().dump());
  json bad = periodic_config();
  bad["mystery"] = 1;
  write_text(dir / "bad.json", bad.dump());

  EXPECT_EQ(run_cli("simulate --config " + (dir / "good.json").string() + " --out " +
                    (dir / "sim").string()),
            0);
  EXPECT_EQ(run_cli("simulate --config " + (dir / "bad.json").string() + " --out " +
                    (dir / "bad").string()),
            2);
  EXPECT_EQ(run_cli("fit --input " + (dir / "sim" / "X.csv").string() +
                    " --basis periodic:5 --k 1 --out " + (dir / "fit").string()),
            2);
  EXPECT_EQ(run_cli("fit --input " + (dir / "missing.csv").string() +
                    " --basis identity --k 1 --out " + (dir / "fit").string()),
            4);
  EXPECT_EQ(run_cli("fit --input " + (dir / "sim" / "X.csv").string() +
                    " --basis periodic:6 --k 2 --out " + (dir / "fit").string()),
            0);
  EXPECT_EQ(run_cli("simulate --config " + (dir / "good.json").string() +
                    " --out /proc/forbidden/out"),
            4);
}
#endif
