#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "cdsnet/loss_kernels.hpp"
#include "cdsnet/scenario.hpp"
#include "cdsnet/sector.hpp"

namespace cdsnet {

struct MicroConfig {
  PerSector<int> sizes{20000, 2000, 2000};
  double connectivity = 32.0;  // mean connectivity C, shared by all channels
  std::uint64_t seed = 1;
};

// One directed exposure of `owner` to `target`.
struct PairLink {
  std::int32_t owner = 0;
  std::int32_t target = 0;
  double size = 0.0;   // base + scale * x
  double base = 0.0;   // mean / C
  double scale = 0.0;  // sd / sqrt(C)
  PairChannel channel = PairChannel::Direct;
  double interest = 0.0;  // monthly rate on unhedged loans
};

// One CDS contract. The buyer's and the seller's view share this record.
struct Contract {
  std::int32_t buyer = 0;
  std::int32_t reference = 0;
  std::int32_t seller = 0;
  double size = 0.0;
  double base = 0.0;
  double scale = 0.0;
  CdsKind kind = CdsKind::Hedge;
  double interest = 0.0;  // buyer's rate on the hedged loan (hedges only)
};

// Node ids are contiguous per sector: F first, then B, then I.
int first_node(const PerSector<int>& sizes, Sector s) noexcept;

// Links for one pair channel. Intra-sector entries draw unordered pairs with
// probability C/N and set both directions with forward/backward correlation
// kappa; cross-sector entries draw each ordered pair with probability C/N_to.
// Throws ConfigError if C >= N_to.
std::vector<PairLink> sample_pair_graph(const PerSector<int>& sizes, double connectivity,
                                        const PairExposureStats& stats,
                                        const MoneyStreamSpec& money, std::uint64_t seed);

// Contracts for one triple entry: every (buyer, reference, seller) triple of
// distinct nodes is drawn with probability C/(N_reference N_seller).
// Throws ConfigError if C >= N_reference N_seller.
std::vector<Contract> sample_cds_hypergraph(const PerSector<int>& sizes, double connectivity,
                                            const TripleExposureStats& stats,
                                            const MoneyStreamSpec& money, std::uint64_t seed);

struct MicroWorld {
  PerSector<int> sizes{};
  std::vector<Sector> sector;
  std::vector<double> theta;
  std::vector<double> rho;
  double sigma = 1.0;
  double fee_mean = 0.0;
  double fee_sd = 0.0;
  int horizon = 12;

  std::vector<PairLink> links;      // grouped by owner after finalize()
  std::vector<Contract> contracts;

  // CSR indices built by finalize()
  std::vector<std::size_t> link_begin;      // node -> first link
  std::vector<std::size_t> role_begin;      // node -> first role entry
  std::vector<std::int32_t> role_contract;  // contracts where the node buys or sells

  int node_count() const noexcept { return static_cast<int>(sector.size()); }
  void finalize();
};

// Empty world: sectors laid out, theta/rho set to the sector means. Parameters
// for money streams and noise are taken from the spec.
MicroWorld blank_world(const ScenarioSpec& spec, const PerSector<int>& sizes);

// Full sample: quenched theta_i ~ N(theta_s, sd^2), Basel rho_i, all channels.
MicroWorld sample_world(const ScenarioSpec& spec, const MicroConfig& config);

inline constexpr int kNever = std::numeric_limits<int>::max();

struct SimulationOptions {
  std::uint64_t seed = 1;
  // Optional per-node month at which the node is forced into default
  // (0 or kNever: not forced).
  std::vector<int> forced_default;
  // Redraw the random part of every exposure each month. Diagnostic only: it
  // removes the persistence of a node's loss field over time, which the
  // macroscopic equations do not track.
  bool redraw_exposures = false;
};

inline constexpr std::size_t kChannelCount = 6;
using ChannelLosses = std::array<double, kChannelCount>;  // indexed by Channel

struct MicroState {
  int horizon = 0;
  std::vector<int> default_month;  // first month with n = 1, kNever if alive at T
  std::vector<ChannelLosses> loss;  // accumulated per node at T

  // per sector, t = 0..T
  PerSector<std::vector<double>> m;
  PerSector<std::vector<double>> mean_loss;        // all nodes
  PerSector<std::vector<double>> alive_loss_mean;  // nodes alive at t
  PerSector<std::vector<double>> alive_loss_var;

  bool defaulted(int node, int tau) const { return default_month[node] <= tau; }
  double total_loss(int node) const;
};

// Node-parallel (OpenMP) and serial reference; results are bit-identical.
MicroState simulate_path(const MicroWorld& world, double xi0, const SimulationOptions& opt);
MicroState simulate_path_serial(const MicroWorld& world, double xi0, const SimulationOptions& opt);

struct MicroEstimate {
  int replicas = 0;
  PerSector<std::vector<double>> m, m_se;        // t = 0..T
  PerSector<std::vector<double>> loss, loss_se;  // population mean loss per node
  PerSector<std::vector<double>> variance;       // mean within-replica variance, alive nodes
};

// Independent worlds and paths per replica, seeds derived from config.seed.
MicroEstimate estimate_macro(const ScenarioSpec& spec, const MicroConfig& config, double xi0,
                             int replicas, bool redraw_exposures = false);

// Columnar text dump: node sector theta default_month (-1 if alive at T).
void write_dump(std::ostream& out, const MicroWorld& world, const MicroState& state);

}  // namespace cdsnet
