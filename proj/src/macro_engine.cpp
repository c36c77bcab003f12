#include "cdsnet/macro_engine.hpp"

#include <cmath>
#include <string>

#include "cdsnet/errors.hpp"
#include "cdsnet/normal.hpp"
#include "cdsnet/quadrature.hpp"

namespace cdsnet {

double basel_rho(double pd_annual) {
  if (!(pd_annual >= 0.0 && pd_annual <= 1.0))
    throw DomainError("basel_rho: pd must lie in [0,1]");
  return 0.12 * (1.0 + std::exp(-50.0 * pd_annual));
}

double annual_pd(double monthly_p) noexcept {
  // 1 - (1-p)^12 without cancellation for tiny p
  return -std::expm1(12.0 * std::log1p(-monthly_p));
}

QuadGrid build_grid(const HeterogeneitySpec& het, const NoiseSpec& noise) {
  const GaussRule rule = gauss_hermite_normal(het.quadrature_nodes);
  QuadGrid grid;
  grid.sigma = noise.sigma;
  for (Sector s : kSectors) {
    auto& sg = grid.sectors[index(s)];
    sg.theta.resize(rule.nodes.size());
    sg.weight = rule.weights;
    sg.rho.resize(rule.nodes.size());
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      const double theta = het.theta_mean[index(s)] + het.theta_sd * rule.nodes[g];
      sg.theta[g] = theta;
      sg.rho[g] = basel_rho(annual_pd(normal_cdf(-theta)));
    }
  }
  return grid;
}

MacroState initial_state(const QuadGrid& grid) {
  MacroState st;
  for (Sector s : kSectors) st.survival[index(s)].assign(1, std::vector<double>(grid.size(), 0.0));
  return st;
}

void advance(MacroState& state, const ScenarioSpec& spec, const QuadGrid& grid, double xi0) {
  const int t = state.clock();
  if (t >= spec.horizon)
    throw DomainError("step_macro: clock " + std::to_string(t) + " already at horizon");
  const double sigma = grid.sigma;
  PerSector<double> next{};
  for (Sector s : kSectors) {
    const SectorMoments mom = total_moments(spec, state.history, s, t);
    const auto& sg = grid[s];
    auto& rows = state.survival[index(s)];
    const std::vector<double>& prev = rows.back();
    std::vector<double> cur(prev.size());
    double m = 0.0;
    for (std::size_t g = 0; g < prev.size(); ++g) {
      const double rho = sg.rho[g];
      const double z = (mom.mean - sigma * std::sqrt(rho) * xi0 - sg.theta[g]) /
                       std::sqrt(mom.variance + sigma * sigma * (1.0 - rho));
      cur[g] = prev[g] + (1.0 - prev[g]) * normal_cdf(z);
      m += sg.weight[g] * cur[g];
    }
    next[index(s)] = m;
    rows.push_back(std::move(cur));
  }
  state.history.push(next);
}

MacroState step_macro(const MacroState& state, const ScenarioSpec& spec, const QuadGrid& grid,
                      double xi0) {
  MacroState out = state;
  advance(out, spec, grid, xi0);
  return out;
}

MacroTrajectory run_trajectory(const ScenarioSpec& spec, const QuadGrid& grid, double xi0) {
  MacroTrajectory tr;
  tr.state = initial_state(grid);
  tr.moments.reserve(spec.horizon + 1);
  auto record = [&] {
    PerSector<SectorMoments> row;
    for (Sector s : kSectors)
      row[index(s)] = total_moments(spec, tr.state.history, s, tr.state.clock());
    tr.moments.push_back(row);
  };
  record();
  for (int t = 0; t < spec.horizon; ++t) {
    advance(tr.state, spec, grid, xi0);
    record();
  }
  return tr;
}

MacroTrajectory run_trajectory(const ScenarioSpec& spec, double xi0) {
  return run_trajectory(spec, build_grid(spec.heterogeneity, spec.noise), xi0);
}

}  // namespace cdsnet
