#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdsnet/sector.hpp"

namespace cdsnet {

// Pair channels: direct economic interaction (d) and unhedged lending (u).
enum class PairChannel : std::uint8_t { Direct, Unhedged };

enum class CdsKind : std::uint8_t { Hedge, Speculative };

std::string_view to_string(PairChannel c) noexcept;
std::string_view to_string(CdsKind k) noexcept;

// Exposure of nodes in `from` to counterparties in `to`. Mean and sd are the
// aggregate per-node values; a single link carries mean/C + sd/sqrt(C) * x.
// kappa is the correlation of x_ij and x_ji, used only by the micro oracle.
struct PairExposureStats {
  PairChannel channel = PairChannel::Direct;
  Sector from = Sector::F;
  Sector to = Sector::F;
  double mean = 0.0;
  double sd = 0.0;
  double kappa = 0.0;

  bool operator==(const PairExposureStats&) const = default;
};

// CDS exposure specified from the protection buyer's perspective. The seller
// sees the same contracts with opposite sign; seller-side aggregates use the
// same (mean, sd), which assumes equal buyer and seller sector sizes.
struct TripleExposureStats {
  CdsKind kind = CdsKind::Hedge;
  Sector buyer = Sector::B;
  Sector reference = Sector::F;
  Sector seller = Sector::B;
  double mean = 0.0;
  double sd = 0.0;

  bool operator==(const TripleExposureStats&) const = default;
};

enum class RhoRule : std::uint8_t { Basel2 };
enum class Xi0Policy : std::uint8_t { Constant };

struct NoiseSpec {
  double sigma = 1.0;
  Xi0Policy xi0_policy = Xi0Policy::Constant;
  RhoRule rho_rule = RhoRule::Basel2;

  bool operator==(const NoiseSpec&) const = default;
};

struct HeterogeneitySpec {
  PerSector<double> theta_mean{2.75, 3.25, 3.75};
  double theta_sd = 0.35;
  int quadrature_nodes = 64;

  bool operator==(const HeterogeneitySpec&) const = default;
};

struct InterestOverride {
  Sector lender = Sector::B;
  Sector borrower = Sector::F;
  double rate = 0.0;

  bool operator==(const InterestOverride&) const = default;
};

struct MoneyStreamSpec {
  double monthly_interest = 0.005;            // epsilon, applied to every sector pair
  std::vector<InterestOverride> overrides;    // per-pair exceptions
  double fee_mean = 0.0008;                   // f0, per unit notional per month
  double fee_var = 0.0002;                    // f^2

  double interest(Sector lender, Sector borrower) const noexcept;

  bool operator==(const MoneyStreamSpec&) const = default;
};

struct ScenarioSpec {
  std::string name;
  std::vector<PairExposureStats> pair_stats;
  std::vector<TripleExposureStats> triple_stats;
  NoiseSpec noise;
  HeterogeneitySpec heterogeneity;
  MoneyStreamSpec money;
  int horizon = 12;  // months

  const PairExposureStats* find_pair(PairChannel channel, Sector from, Sector to) const noexcept;

  // Throws ValidationError on the first violated invariant.
  void validate() const;

  bool operator==(const ScenarioSpec&) const = default;
};

// Built-in catalog: S0..S12 and the modified baselines S~0, S~9, S~10.
// "St0" and the UTF-8 spelling with a combining tilde are accepted as aliases.
ScenarioSpec builtin_scenario(std::string_view name);
const std::vector<std::string>& builtin_names();
std::optional<std::string> canonical_scenario_name(std::string_view name);

// JSON document <-> spec. parse_scenario validates; serialize_scenario emits
// every field so that parse(serialize(s)) == s.
ScenarioSpec parse_scenario(std::string_view document);
std::string serialize_scenario(const ScenarioSpec& spec);

// Move a fraction f_h of the unhedged B->F book into hedged CDS contracts
// (buyer B, reference F) with protection bought from `seller`.
ScenarioSpec hedge_sweep(const ScenarioSpec& base, double f_h, Sector seller);

// Add speculative B-bought protection on F of volume `volume` times the
// unhedged B->F book, sold by `seller`.
ScenarioSpec speculative_sweep(const ScenarioSpec& base, double volume, Sector seller);

}  // namespace cdsnet
