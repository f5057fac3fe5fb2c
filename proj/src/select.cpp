#include "tsfactor/select.hpp"

#include "tsfactor/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace tsfactor {

void CandidateGrid::validate() const {
  if (bases.empty()) throw std::invalid_argument("candidate grid: no bases");
  if (ranks.empty()) throw std::invalid_argument("candidate grid: no ranks");
  for (const auto& b : bases) {
    if (b.horizon() != bases.front().horizon()) {
      throw std::invalid_argument("candidate grid: bases have different horizons");
    }
  }
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 1) throw std::invalid_argument("candidate grid: ranks must be positive");
    if (i > 0 && ranks[i] <= ranks[i - 1]) {
      throw std::invalid_argument("candidate grid: ranks must be ascending and distinct");
    }
  }
}

void PenaltyParams::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("penalty: lambda must lie in (0, 1)");
  }
  if (!std::isfinite(c_pen) || c_pen < 0.0) {
    throw std::invalid_argument("penalty: c_pen must be nonnegative");
  }
  if (!std::isfinite(noise_level) || !(noise_level > 0.0)) {
    throw std::invalid_argument("penalty: noise_level must be positive");
  }
  if (!std::isfinite(s) || s < 0.0) throw std::invalid_argument("penalty: s must be nonnegative");
}

double penalty(const PenaltyParams& params, int d, int tau, int k) {
  const double shifted_s = params.s + tau + k;
  return (params.c_pen * k / params.lambda) * (d + tau + shifted_s) * params.noise_level;
}

namespace {

struct BasisFit {
  std::vector<SelectionRecord> records;
  std::vector<int> skipped;
};

}  // namespace

SelectionResult select(const Matrix& x, const CandidateGrid& grid, const PenaltyParams& params,
                       int threads) {
  grid.validate();
  params.validate();
  require_valid(x, "select");
  const int d = static_cast<int>(x.rows());
  for (const auto& b : grid.bases) {
    if (x.cols() != b.horizon()) {
      throw std::invalid_argument("select: x has " + std::to_string(x.cols()) +
                                  " columns, grid horizon is " + std::to_string(b.horizon()));
    }
  }

  std::vector<BasisFit> per_basis(grid.bases.size());
  std::vector<std::optional<SvdResult>> svds(grid.bases.size());
  parallel_for(grid.bases.size(), threads, [&](std::size_t b) {
    const StructureBasis& basis = grid.bases[b];
    const int max_rank = std::min(d, basis.tau());
    BasisFit& out = per_basis[b];
    bool any = false;
    for (int k : grid.ranks) any = any || k <= max_rank;
    if (!any) {
      out.skipped = grid.ranks;
      return;
    }
    svds[b] = svd(project(x, basis));
    for (int k : grid.ranks) {
      if (k > max_rank) {
        out.skipped.push_back(k);
        continue;
      }
      const FactorModel model = fit_from_svd(*svds[b], basis, k);
      const double r = empirical_risk(predict(model), x);
      const double p = penalty(params, d, basis.tau(), k);
      out.records.push_back({b, basis.descriptor(), basis.tau(), k, r, p, r + p, false});
    }
  });

  std::vector<SelectionRecord> table;
  std::vector<std::pair<std::size_t, int>> skipped;
  for (std::size_t b = 0; b < per_basis.size(); ++b) {
    table.insert(table.end(), per_basis[b].records.begin(), per_basis[b].records.end());
    for (int k : per_basis[b].skipped) skipped.emplace_back(b, k);
  }
  if (table.empty()) {
    throw std::invalid_argument("select: no feasible (tau, k) pair in the candidate grid");
  }

  auto key = [](const SelectionRecord& r) { return std::make_tuple(r.score, r.k, r.tau); };
  auto best = std::min_element(table.begin(), table.end(),
                               [&](const auto& a, const auto& b) { return key(a) < key(b); });
  best->chosen = true;

  const std::size_t chosen_b = best->basis_index;
  FactorModel winner = fit_from_svd(*svds[chosen_b], grid.bases[chosen_b], best->k);
  return SelectionResult{chosen_b, best->k, std::move(table), std::move(skipped),
                         std::move(winner)};
}

double calibrate_noise_level(const Matrix& x, const CandidateGrid& grid) {
  grid.validate();
  const auto largest = std::max_element(
      grid.bases.begin(), grid.bases.end(),
      [](const StructureBasis& a, const StructureBasis& b) { return a.tau() < b.tau(); });
  const int max_rank = std::min(static_cast<int>(x.rows()), largest->tau());
  int k = 0;
  for (int r : grid.ranks) {
    if (r <= max_rank) k = r;
  }
  if (k == 0) {
    throw std::invalid_argument("calibrate_noise_level: no feasible rank for the largest basis");
  }
  const FactorModel model = fit(x, *largest, k);
  return risk(predict(model), x);
}

}  // namespace tsfactor
