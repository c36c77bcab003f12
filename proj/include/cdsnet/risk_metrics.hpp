#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdsnet/macro_engine.hpp"
#include "cdsnet/scenario.hpp"

namespace cdsnet {

// Deterministic grid over the economy-wide factor xi0 ~ N(0,1).
struct Xi0Grid {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // probability masses, sum to 1
  // True when the grid discretizes the full normal law; quantiles and
  // densities then interpolate between nodes under the exact measure.
  bool gaussian = false;

  std::size_t size() const noexcept { return nodes.size(); }

  // `count` nodes equally spaced in xi between the `tail` and 1-`tail`
  // quantiles. Each node carries the normal mass of its cell (cell borders at
  // midpoints, outer cells open-ended).
  static Xi0Grid standard(int count = 2001, double tail = 1e-6);
  static Xi0Grid point(double xi0);
};

enum class Variable : std::uint8_t { Loss, DefaultFraction };

struct RiskReport {
  std::string scenario;
  bool gaussian = false;
  std::vector<double> xi0;
  std::vector<double> weight;
  std::vector<double> loss;  // end-of-horizon loss per bank, population average
  std::vector<double> m;     // end-of-horizon bank default fraction
  std::vector<double> m_insurers;

  std::size_t size() const noexcept { return xi0.size(); }
  const std::vector<double>& values(Variable v) const { return v == Variable::Loss ? loss : m; }
};

RiskReport sweep(const ScenarioSpec& spec, const Xi0Grid& grid);         // OpenMP
RiskReport sweep_serial(const ScenarioSpec& spec, const Xi0Grid& grid);  // reference

struct DensityTable {
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  std::vector<double> center;
  std::vector<double> density;

  // density of the bin containing x (0 outside the range)
  double at(double x) const;
};

// Normalized histogram. Without a range the observed [min,max] is used; a
// degenerate range becomes a single unit-width bin. Throws EmptyInput.
DensityTable density(const RiskReport& r, Variable v, int bins = 400,
                     std::optional<std::pair<double, double>> range = std::nullopt);

// Smallest x with P(X <= x) >= q. Throws DomainError unless 0 < q < 1.
double quantile(const RiskReport& r, Variable v, double q);

// Left-continuous quantile of a discrete weighted sample.
double weighted_quantile(const std::vector<double>& values, const std::vector<double>& weights,
                         double q);

double mean(const RiskReport& r, Variable v);
double far(const RiskReport& r, double q);            // m_q - <m>
double value_at_risk(const RiskReport& r, double q);  // q-quantile of L

struct HedgeCurveRow {
  double f_h = 0.0;
  double mean_m = 0.0;
  double far_99 = 0.0;
  double var_99 = 0.0;
};

std::vector<HedgeCurveRow> hedge_curve(const ScenarioSpec& base, Sector seller,
                                       const std::vector<double>& fractions, const Xi0Grid& grid);

}  // namespace cdsnet
