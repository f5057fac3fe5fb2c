#include "tsfactor/experiment.hpp"

#include "tsfactor/estimator.hpp"
#include "tsfactor/parallel.hpp"
#include "tsfactor/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace tsfactor {

using nlohmann::json;

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::Unstructured: return "unstructured";
    case Scenario::Periodic: return "periodic";
    case Scenario::Smooth: return "smooth";
  }
  return "unknown";
}

namespace {

// Strict object reader: every key must be consumed, types are checked, and
// errors carry the dotted field path.
class ObjectReader {
public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "config" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  std::optional<long long> integer(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = raw(key);
    if (!v.is_number_integer()) fail(field(key), "expected an integer");
    return v.get<long long>();
  }

  std::optional<double> number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = raw(key);
    if (!v.is_number()) fail(field(key), "expected a number");
    return v.get<double>();
  }

  std::optional<std::string> string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = raw(key);
    if (!v.is_string()) fail(field(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<int> int_list(const std::string& key) {
    if (!has(key)) return {};
    const json& v = raw(key);
    if (!v.is_array()) fail(field(key), "expected an array of integers");
    std::vector<int> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) fail(field(key), "expected an array of integers");
      out.push_back(to_int(e.get<long long>(), field(key)));
    }
    return out;
  }

  std::optional<int> int_field(const std::string& key) {
    const auto v = integer(key);
    if (!v) return std::nullopt;
    return to_int(*v, field(key));
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(field(it.key()), "unknown key");
    }
  }

  [[noreturn]] static void fail(const std::string& field, const std::string& message) {
    throw ConfigError("config field '" + field + "': " + message);
  }

private:
  static int to_int(long long v, const std::string& field) {
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      fail(field, "integer out of range");
    }
    return static_cast<int>(v);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

NoiseSpec parse_noise(const json& j) {
  ObjectReader r(j, "noise");
  NoiseSpec spec;
  const std::string kind = r.string("kind").value_or("iid");
  if (kind == "iid") {
    spec.kind = NoiseKind::IidGaussian;
  } else if (kind == "ma1") {
    spec.kind = NoiseKind::Ma1;
  } else if (kind == "ar1") {
    spec.kind = NoiseKind::Ar1;
  } else {
    ObjectReader::fail("noise.kind", "expected one of iid, ma1, ar1, got '" + kind + "'");
  }
  spec.sigma = r.number("sigma").value_or(1.0);
  if (r.has("theta")) {
    if (spec.kind != NoiseKind::Ma1) ObjectReader::fail("noise.theta", "only valid for ma1");
    spec.theta = *r.number("theta");
  }
  if (r.has("rho")) {
    if (spec.kind != NoiseKind::Ar1) ObjectReader::fail("noise.rho", "only valid for ar1");
    spec.rho = *r.number("rho");
  }
  const std::string law = r.string("innovations").value_or("gaussian");
  if (law == "gaussian") {
    spec.innovations = Innovations::Gaussian;
  } else if (law == "uniform") {
    spec.innovations = Innovations::Uniform;
  } else {
    ObjectReader::fail("noise.innovations", "expected gaussian or uniform");
  }
  r.finish();
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    ObjectReader::fail("noise", e.what());
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  ObjectReader r(j, "");
  ExperimentConfig cfg;
  if (const auto schema = r.string("schema"); schema && *schema != kConfigSchema) {
    ObjectReader::fail("schema", "expected '" + std::string(kConfigSchema) + "'");
  }

  const auto scenario = r.string("scenario");
  if (!scenario) ObjectReader::fail("scenario", "required");
  if (*scenario == "unstructured") {
    cfg.scenario = Scenario::Unstructured;
  } else if (*scenario == "periodic") {
    cfg.scenario = Scenario::Periodic;
  } else if (*scenario == "smooth") {
    cfg.scenario = Scenario::Smooth;
  } else {
    ObjectReader::fail("scenario", "expected unstructured, periodic or smooth");
  }

  const auto d = r.int_field("d");
  if (!d) ObjectReader::fail("d", "required");
  cfg.d = *d;
  const auto horizon = r.int_field("T");
  if (!horizon) ObjectReader::fail("T", "required");
  cfg.horizon = *horizon;
  cfg.tau = r.int_field("tau");
  cfg.k = r.int_field("k").value_or(1);
  cfg.n_freq = r.int_field("n_freq");

  if (r.has("noise")) cfg.noise = parse_noise(r.raw("noise"));

  if (r.has("signal")) {
    ObjectReader s(r.raw("signal"), "signal");
    cfg.signal.snr = s.number("snr");
    cfg.signal.beta = s.int_field("beta").value_or(2);
    cfg.signal.ell = s.number("ell").value_or(1.0);
    cfg.signal.n_terms = s.int_field("n_terms");
    cfg.signal.c_beta_l = s.number("c_beta_l").value_or(1.0);
    s.finish();
  }

  cfg.replications = r.int_field("replications").value_or(1);
  if (const auto seed = r.integer("seed")) {
    if (*seed < 0) ObjectReader::fail("seed", "must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(*seed);
  }

  if (r.has("grids")) {
    ObjectReader g(r.raw("grids"), "grids");
    cfg.grids.horizons = g.int_list("T");
    cfg.grids.taus = g.int_list("tau");
    cfg.grids.ranks = g.int_list("k");
    cfg.grids.n_freqs = g.int_list("n_freq");
    g.finish();
  }

  if (r.has("penalty")) {
    ObjectReader p(r.raw("penalty"), "penalty");
    cfg.penalty.lambda = p.number("lambda").value_or(0.5);
    cfg.penalty.c_pen = p.number("c_pen").value_or(2.0);
    cfg.penalty.s = p.number("s").value_or(1.0);
    if (p.has("noise_level")) {
      const json& nl = p.raw("noise_level");
      if (nl.is_number()) {
        cfg.noise_level_source = NoiseLevelSource::Fixed;
        cfg.penalty.noise_level = nl.get<double>();
      } else if (nl == "known") {
        cfg.noise_level_source = NoiseLevelSource::Known;
      } else if (nl == "plugin") {
        cfg.noise_level_source = NoiseLevelSource::Plugin;
      } else {
        ObjectReader::fail("penalty.noise_level", "expected a number, \"known\" or \"plugin\"");
      }
    }
    p.finish();
  }

  if (r.has("rate")) {
    ObjectReader q(r.raw("rate"), "rate");
    cfg.rate_tolerance = q.number("tolerance").value_or(0.15);
    cfg.cutoff_factor = q.number("cutoff_factor").value_or(2.0);
    q.finish();
  }

  r.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& message) {
    ObjectReader::fail(field, message);
  };
  if (d < 1) fail("d", "must be positive");
  if (horizon < 2) fail("T", "must be at least 2");
  if (k < 1) fail("k", "must be positive");
  if (replications < 1) fail("replications", "must be positive");
  if (!(rate_tolerance > 0.0)) fail("rate.tolerance", "must be positive");
  if (!(cutoff_factor >= 1.0)) fail("rate.cutoff_factor", "must be at least 1");
  if (signal.snr && !(*signal.snr > 0.0)) fail("signal.snr", "must be positive");
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    fail("noise", e.what());
  }
  try {
    PenaltyParams check = penalty;
    if (noise_level_source != NoiseLevelSource::Fixed) check.noise_level = 1.0;
    check.validate();
  } catch (const std::invalid_argument& e) {
    fail("penalty", e.what());
  }

  switch (scenario) {
    case Scenario::Unstructured:
      if (tau && *tau != horizon) fail("tau", "unstructured scenario requires tau = T or no tau");
      if (n_freq) fail("n_freq", "only valid for the smooth scenario");
      if (k > std::min(d, horizon)) fail("k", "must not exceed min(d, T)");
      break;
    case Scenario::Periodic:
      if (!tau) fail("tau", "required for the periodic scenario");
      if (*tau < 1) fail("tau", "must be positive");
      if (horizon % *tau != 0) fail("tau", "T must be divisible by tau");
      if (n_freq) fail("n_freq", "only valid for the smooth scenario");
      if (k > std::min(d, *tau)) fail("k", "must not exceed min(d, tau)");
      for (int t : grids.horizons) {
        if (t < 2 || t % *tau != 0) fail("grids.T", "every T must be >= 2 and divisible by tau");
      }
      break;
    case Scenario::Smooth: {
      if (tau) fail("tau", "not valid for the smooth scenario (use n_freq)");
      if (signal.beta < 1) fail("signal.beta", "must be a positive integer");
      if (!(signal.ell > 0.0)) fail("signal.ell", "must be positive");
      if (!(signal.c_beta_l > 0.0)) fail("signal.c_beta_l", "must be positive");
      const int max_terms = (horizon - 2) / 2;
      if (signal.n_terms && (*signal.n_terms < 0 || *signal.n_terms > max_terms)) {
        fail("signal.n_terms", "must lie in [0, (T - 2) / 2] = [0, " + std::to_string(max_terms) + "]");
      }
      if (n_freq && (*n_freq < 0 || 2 * *n_freq >= horizon)) {
        fail("n_freq", "must satisfy 0 <= 2 n_freq < T");
      }
      const int cutoff = smooth_cutoff(*this);
      if (k > std::min(d, 2 * cutoff + 1)) fail("k", "must not exceed min(d, 2 N + 1) for the cutoff N");
      for (int n : grids.n_freqs) {
        if (n < 0 || 2 * n >= horizon) fail("grids.n_freq", "every N must satisfy 0 <= 2N < T");
      }
      break;
    }
  }
  for (int t : grids.horizons) {
    if (t < 2) fail("grids.T", "every T must be at least 2");
  }
  for (int t : grids.taus) {
    if (t < 1 || horizon % t != 0) fail("grids.tau", "every tau must be positive and divide T");
  }
  for (std::size_t i = 0; i < grids.ranks.size(); ++i) {
    if (grids.ranks[i] < 1 || (i > 0 && grids.ranks[i] <= grids.ranks[i - 1])) {
      fail("grids.k", "ranks must be positive, ascending and distinct");
    }
  }
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["schema"] = kConfigSchema;
  j["scenario"] = to_string(c.scenario);
  j["d"] = c.d;
  j["T"] = c.horizon;
  if (c.tau) j["tau"] = *c.tau;
  j["k"] = c.k;
  if (c.n_freq) j["n_freq"] = *c.n_freq;
  json noise{{"kind", to_string(c.noise.kind)}, {"sigma", c.noise.sigma}};
  if (c.noise.kind == NoiseKind::Ma1) noise["theta"] = c.noise.theta;
  if (c.noise.kind == NoiseKind::Ar1) noise["rho"] = c.noise.rho;
  noise["innovations"] = c.noise.innovations == Innovations::Uniform ? "uniform" : "gaussian";
  j["noise"] = noise;
  json signal{{"beta", c.signal.beta}, {"ell", c.signal.ell}, {"c_beta_l", c.signal.c_beta_l}};
  if (c.signal.snr) signal["snr"] = *c.signal.snr;
  if (c.signal.n_terms) signal["n_terms"] = *c.signal.n_terms;
  j["signal"] = signal;
  j["replications"] = c.replications;
  j["seed"] = c.seed;
  j["grids"] = {{"T", c.grids.horizons},
                {"tau", c.grids.taus},
                {"k", c.grids.ranks},
                {"n_freq", c.grids.n_freqs}};
  json pen{{"lambda", c.penalty.lambda}, {"c_pen", c.penalty.c_pen}, {"s", c.penalty.s}};
  switch (c.noise_level_source) {
    case NoiseLevelSource::Known: pen["noise_level"] = "known"; break;
    case NoiseLevelSource::Plugin: pen["noise_level"] = "plugin"; break;
    case NoiseLevelSource::Fixed: pen["noise_level"] = c.penalty.noise_level; break;
  }
  j["penalty"] = pen;
  j["rate"] = {{"tolerance", c.rate_tolerance}, {"cutoff_factor", c.cutoff_factor}};
  return j;
}

int smooth_cutoff(const ExperimentConfig& c) {
  if (c.n_freq) return *c.n_freq;
  const double op = sigma_op_norm(c.noise, c.horizon).op_norm;
  return optimal_cutoff(c.signal.beta, c.signal.c_beta_l, c.d, c.horizon, c.k, op);
}

StructureBasis scenario_basis(const ExperimentConfig& c) {
  switch (c.scenario) {
    case Scenario::Unstructured: return build_identity(c.horizon);
    case Scenario::Periodic: return build_periodic(*c.tau, c.horizon);
    case Scenario::Smooth: return build_trig(smooth_cutoff(c), c.horizon);
  }
  throw std::logic_error("scenario_basis: unhandled scenario");
}

namespace {

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

}  // namespace

SimulatedData simulate(const ExperimentConfig& c, std::uint64_t seed) {
  const std::uint64_t signal_seed = derive_seed(seed, 0);
  const std::uint64_t noise_seed = derive_seed(seed, 1);
  Rng rng(signal_seed);

  StructureBasis basis = scenario_basis(c);
  Matrix u = gaussian_matrix(rng, c.d, c.k);
  Matrix v;
  Matrix m;
  switch (c.scenario) {
    case Scenario::Unstructured:
    case Scenario::Periodic:
      v = gaussian_matrix(rng, c.k, basis.tau());
      m = expand(u * v, basis);
      break;
    case Scenario::Smooth: {
      // Rows of U on the unit sphere, rows of the dictionary in W(beta, L).
      for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double norm = u.row(i).norm();
        if (norm > 0.0) u.row(i) /= norm;
      }
      SmoothFactorSpec spec{c.k, c.signal.beta, c.signal.ell,
                            c.signal.n_terms.value_or((c.horizon - 2) / 2)};
      v = gen_smooth_dictionary(spec, c.horizon, derive_seed(signal_seed, 1));
      m = u * v;
      break;
    }
  }

  if (c.signal.snr) {
    const double target = *c.signal.snr * marginal_variance(c.noise) * static_cast<double>(m.size());
    const double energy = m.squaredNorm();
    if (energy > 0.0) {
      const double scale = std::sqrt(target / energy);
      m *= scale;
      u *= scale;
    }
  }

  Matrix x = m + sample_noise(c.noise, c.d, c.horizon, noise_seed);
  return SimulatedData{std::move(m), std::move(x), std::move(u), std::move(v), std::move(basis)};
}

std::vector<RiskEstimate> monte_carlo_risks(const ExperimentConfig& c,
                                            const std::vector<StructureBasis>& fit_bases,
                                            int threads) {
  const auto reps = static_cast<std::size_t>(c.replications);
  std::vector<std::vector<double>> risks(reps, std::vector<double>(fit_bases.size()));
  parallel_for(reps, threads, [&](std::size_t r) {
    const SimulatedData data = simulate(c, derive_seed(c.seed, r));
    for (std::size_t b = 0; b < fit_bases.size(); ++b) {
      risks[r][b] = risk(predict(fit(data.x, fit_bases[b], c.k)), data.m);
    }
  });

  std::vector<RiskEstimate> out;
  for (std::size_t b = 0; b < fit_bases.size(); ++b) {
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) sum += risks[r][b];
    const double mean = sum / static_cast<double>(reps);
    double sq = 0.0;
    for (std::size_t r = 0; r < reps; ++r) sq += (risks[r][b] - mean) * (risks[r][b] - mean);
    const double sd = reps > 1 ? std::sqrt(sq / static_cast<double>(reps - 1)) : 0.0;
    out.push_back({mean, sd, c.replications});
  }
  return out;
}

CandidateGrid selection_grid(const ExperimentConfig& c) {
  CandidateGrid grid;
  if (c.scenario == Scenario::Smooth) {
    if (c.grids.n_freqs.empty()) ObjectReader::fail("grids.n_freq", "required for selection");
    for (int n : c.grids.n_freqs) grid.bases.push_back(build_trig(n, c.horizon));
  } else {
    if (c.grids.taus.empty()) ObjectReader::fail("grids.tau", "required for selection");
    for (int t : c.grids.taus) grid.bases.push_back(build_periodic(t, c.horizon));
  }
  if (c.grids.ranks.empty()) ObjectReader::fail("grids.k", "required for selection");
  grid.ranks = c.grids.ranks;
  return grid;
}

PenaltyParams resolve_penalty(const ExperimentConfig& c, const Matrix& x,
                              const CandidateGrid& grid) {
  PenaltyParams p = c.penalty;
  switch (c.noise_level_source) {
    case NoiseLevelSource::Known:
      p.noise_level = sigma_op_norm(c.noise, static_cast<int>(x.cols())).op_norm;
      break;
    case NoiseLevelSource::Plugin:
      p.noise_level = calibrate_noise_level(x, grid);
      if (!(p.noise_level > 0.0)) {
        throw NumericError("plug-in noise level is zero; the largest candidate interpolates X");
      }
      break;
    case NoiseLevelSource::Fixed:
      break;
  }
  return p;
}

LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw std::invalid_argument("fit_log_log: need at least 3 paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw NumericError("fit_log_log: values must be positive");
    }
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (!(sxx > 0.0)) throw NumericError("fit_log_log: x values are all equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = std::log(y[i]) - (intercept + slope * std::log(x[i]));
    sse += e * e;
  }
  return {slope, intercept, std::sqrt(sse / (n - 2.0) / sxx)};
}

namespace {

RateReport sweep_rate_check(const ExperimentConfig& c, int threads) {
  if (c.grids.horizons.size() < 4) {
    ObjectReader::fail("grids.T", "rate-check needs at least 4 sweep points");
  }
  RateReport report{c.scenario, {}, std::nullopt, std::nullopt, std::nullopt, c.rate_tolerance, false};
  std::vector<double> rates;
  std::vector<double> means;
  for (std::size_t p = 0; p < c.grids.horizons.size(); ++p) {
    ExperimentConfig point = c;
    point.horizon = c.grids.horizons[p];
    if (c.scenario == Scenario::Unstructured) point.tau.reset();
    try {
      point.validate();
      const StructureBasis basis = scenario_basis(point);
      const RiskEstimate est = monte_carlo_risks(point, {basis}, threads).front();
      const double rate = static_cast<double>(point.k) * (point.d + basis.tau()) /
                          (static_cast<double>(point.d) * point.horizon);
      report.points.push_back({point.d, point.horizon, basis.tau(), point.k, est.mean, est.std, rate,
                               est.replications});
      rates.push_back(rate);
      means.push_back(est.mean);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericError("rate-check point T = " + std::to_string(point.horizon) + " failed: " +
                         e.what());
    }
  }
  report.regression = fit_log_log(rates, means);
  report.pass = std::abs(report.regression->slope - 1.0) <= c.rate_tolerance;
  return report;
}

RateReport cutoff_rate_check(const ExperimentConfig& c, int threads) {
  const double op = sigma_op_norm(c.noise, c.horizon).op_norm;
  const int n_star =
      optimal_cutoff(c.signal.beta, c.signal.c_beta_l, c.d, c.horizon, c.k, op);
  const int cap = (c.horizon - 1) / 2;
  std::vector<int> cutoffs;
  for (int n : {1, n_star / 2, n_star, 2 * n_star, 4 * n_star}) {
    n = std::clamp(n, 1, cap);
    if (2 * n + 1 < c.k) continue;  // rank k not representable
    if (std::find(cutoffs.begin(), cutoffs.end(), n) == cutoffs.end()) cutoffs.push_back(n);
  }
  std::sort(cutoffs.begin(), cutoffs.end());
  if (std::find(cutoffs.begin(), cutoffs.end(), n_star) == cutoffs.end()) {
    ObjectReader::fail("k", "optimal cutoff " + std::to_string(n_star) +
                                " cannot represent rank " + std::to_string(c.k));
  }

  std::vector<StructureBasis> bases;
  for (int n : cutoffs) bases.push_back(build_trig(n, c.horizon));
  ExperimentConfig data_cfg = c;
  data_cfg.n_freq = n_star;
  std::vector<RiskEstimate> est;
  try {
    est = monte_carlo_risks(data_cfg, bases, threads);
  } catch (const std::exception& e) {
    throw NumericError(std::string("rate-check cutoff comparison failed: ") + e.what());
  }

  RateReport report{c.scenario, {}, std::nullopt, n_star, std::nullopt, c.rate_tolerance, false};
  double best = std::numeric_limits<double>::infinity();
  double at_star = 0.0;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    const int tau = 2 * cutoffs[i] + 1;
    const double variance = op * c.k * (c.d + tau) / (static_cast<double>(c.d) * c.horizon);
    const double bias = c.signal.c_beta_l * std::pow(cutoffs[i], -2.0 * c.signal.beta);
    report.points.push_back({c.d, c.horizon, tau, c.k, est[i].mean, est[i].std, bias + variance,
                             est[i].replications});
    best = std::min(best, est[i].mean);
    if (cutoffs[i] == n_star) at_star = est[i].mean;
  }
  report.best_mean_risk = best;
  report.pass = at_star <= c.cutoff_factor * best;
  return report;
}

}  // namespace

RateReport rate_check(const ExperimentConfig& c, int threads) {
  c.validate();
  return c.scenario == Scenario::Smooth ? cutoff_rate_check(c, threads)
                                        : sweep_rate_check(c, threads);
}

json to_json(const RateReport& r) {
  json j;
  j["schema"] = "tsfactor.rate_report/1";
  j["scenario"] = to_string(r.scenario);
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"d", p.d},
                      {"T", p.horizon},
                      {"tau", p.tau},
                      {"k", p.k},
                      {"mean_risk", p.mean_risk},
                      {"std_risk", p.std_risk},
                      {"theoretical_rate", p.theoretical_rate},
                      {"replications", p.replications}});
  }
  j["points"] = points;
  if (r.regression) {
    j["regression"] = {{"slope", r.regression->slope},
                       {"intercept", r.regression->intercept},
                       {"slope_stderr", r.regression->slope_stderr}};
  } else {
    j["regression"] = nullptr;
  }
  if (r.optimal_n) j["optimal_n"] = *r.optimal_n;
  if (r.best_mean_risk) j["best_mean_risk"] = *r.best_mean_risk;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

}  // namespace tsfactor
