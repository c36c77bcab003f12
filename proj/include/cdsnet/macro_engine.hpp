#pragma once

#include <vector>

#include "cdsnet/loss_kernels.hpp"
#include "cdsnet/scenario.hpp"
#include "cdsnet/sector.hpp"

namespace cdsnet {

// rho = 0.12 (1 + exp(-50 pd)); pd outside [0,1] throws DomainError.
double basel_rho(double pd_annual);

// Annual default probability from a monthly one: 1 - (1 - p)^12.
double annual_pd(double monthly_p) noexcept;

// Quadrature over the wealth offset theta of one sector.
struct SectorGrid {
  std::vector<double> theta;   // ascending
  std::vector<double> weight;  // sums to 1
  std::vector<double> rho;     // Basel correlation per node
};

struct QuadGrid {
  PerSector<SectorGrid> sectors;
  double sigma = 1.0;

  const SectorGrid& operator[](Sector s) const noexcept { return sectors[index(s)]; }
  std::size_t size() const noexcept { return sectors[0].theta.size(); }
};

QuadGrid build_grid(const HeterogeneitySpec& het, const NoiseSpec& noise);

struct MacroState {
  DefaultHistory history;
  // survival[s][t][g] = <n_t> at grid point g of sector s, i.e. the
  // probability of having defaulted by month t.
  PerSector<std::vector<std::vector<double>>> survival;

  int clock() const noexcept { return history.clock(); }
};

MacroState initial_state(const QuadGrid& grid);

// One month of the macroscopic map. Throws DomainError if state.clock() >=
// spec.horizon.
MacroState step_macro(const MacroState& state, const ScenarioSpec& spec, const QuadGrid& grid,
                      double xi0);
void advance(MacroState& state, const ScenarioSpec& spec, const QuadGrid& grid, double xi0);

struct MacroTrajectory {
  MacroState state;
  // moments[t][s] for t = 0..T, evaluated on the history up to t.
  std::vector<PerSector<SectorMoments>> moments;

  // End-of-horizon loss per node of sector s, averaged over all nodes.
  double loss_per_node(Sector s) const { return moments.back()[index(s)].population_mean; }
  double default_fraction(Sector s) const { return state.history.row(s).back(); }
};

MacroTrajectory run_trajectory(const ScenarioSpec& spec, double xi0);
MacroTrajectory run_trajectory(const ScenarioSpec& spec, const QuadGrid& grid, double xi0);

}  // namespace cdsnet
