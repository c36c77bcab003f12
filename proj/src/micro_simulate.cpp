#include <cmath>
#include <numeric>
#include <ostream>

#include "cdsnet/errors.hpp"
#include "cdsnet/micro_oracle.hpp"
#include "cdsnet/random.hpp"

namespace cdsnet {

double MicroState::total_loss(int node) const {
  const auto& l = loss[node];
  return std::accumulate(l.begin(), l.end(), 0.0);
}

namespace {

constexpr std::uint64_t kIdioStream = 0x1D10;
constexpr std::uint64_t kFeeStream = 0xFEE5;
constexpr std::uint64_t kLinkStream = 0x714C;
constexpr std::uint64_t kContractStream = 0xC047;

constexpr std::size_t slot(Channel c) { return static_cast<std::size_t>(c); }

// Cumulative interest per unit loan received through month t from a borrower
// first defaulted in month `dm`: (1+eps)^{min(t, dm-1)} - 1.
double interest_paid(double eps, int dm, int t) {
  if (eps == 0.0) return 0.0;
  const int months = dm <= t ? dm - 1 : t;
  return std::pow(1.0 + eps, months) - 1.0;
}

// Losses are evaluated in closed form from default months: every flow in a
// link or contract depends on the counterparties' histories only through the
// month they defaulted, plus the accumulated fee stream.
struct Stepper {
  const MicroWorld& w;
  const SimulationOptions& opt;
  double xi0;
  const std::vector<int>& dm;
  std::vector<int>& next_dm;
  std::vector<ChannelLosses>& acc;
  const std::vector<double>& fees;  // per contract, paid through month t

  double n(int v, int tau) const { return dm[v] <= tau ? 1.0 : 0.0; }

  double link_size(const PairLink& k, std::size_t id, int t) const {
    if (!opt.redraw_exposures) return k.size;
    return k.base + k.scale * rng::normal(opt.seed, kLinkStream, id, t);
  }
  double contract_size(const Contract& c, std::size_t id, int t) const {
    if (!opt.redraw_exposures) return c.size;
    return c.base + c.scale * rng::normal(opt.seed, kContractStream, id, t);
  }

  // Losses of node i through month t, then its default decision for t+1.
  void node(int i, int t) const {
    ChannelLosses a{};
    for (std::size_t l = w.link_begin[i]; l < w.link_begin[i + 1]; ++l) {
      const PairLink& k = w.links[l];
      double unit = n(k.target, t);
      if (k.channel == PairChannel::Unhedged) unit -= interest_paid(k.interest, dm[k.target], t);
      const auto ch = k.channel == PairChannel::Direct ? Channel::Direct : Channel::Unhedged;
      a[slot(ch)] += link_size(k, l, t) * unit;
    }
    for (std::size_t r = w.role_begin[i]; r < w.role_begin[i + 1]; ++r) {
      const std::int32_t id = w.role_contract[r];
      const Contract& c = w.contracts[id];
      const int dr = dm[c.reference];
      const bool ref_default = dr <= t;
      double unit;
      Channel ch;
      if (c.buyer == i) {
        if (c.kind == CdsKind::Hedge) {
          // uncovered only if the seller was already dead when the reference defaulted
          const double uncovered = ref_default && dm[c.seller] <= dr ? 1.0 : 0.0;
          unit = uncovered + fees[id] - interest_paid(c.interest, dr, t);
          ch = Channel::HedgeBuyer;
        } else {
          const double payout = ref_default && dm[c.seller] > dr ? 1.0 : 0.0;
          unit = -(payout - fees[id]);
          ch = Channel::SpecBuyer;
        }
      } else {
        const double paid = ref_default && dm[i] > dr ? 1.0 : 0.0;
        unit = paid - fees[id];
        ch = c.kind == CdsKind::Hedge ? Channel::HedgeSeller : Channel::SpecSeller;
      }
      a[slot(ch)] += contract_size(c, id, t) * unit;
    }
    acc[i] = a;

    if (t < w.horizon && dm[i] > t) {
      const bool forced = !opt.forced_default.empty() && opt.forced_default[i] == t + 1;
      const double loss = std::accumulate(a.begin(), a.end(), 0.0);
      const double rho = w.rho[i];
      const double eta = w.sigma * (std::sqrt(rho) * xi0 +
                                    std::sqrt(1.0 - rho) * rng::normal(opt.seed, kIdioStream, i, t));
      if (forced || w.theta[i] - loss + eta < 0.0) next_dm[i] = t + 1;
    }
  }
};

// Fee paid in month t on contract id, if all three parties are alive at t.
void accrue_fee(const MicroWorld& w, const SimulationOptions& opt, const std::vector<int>& dm,
                std::vector<double>& fees, std::size_t id, int t) {
  const Contract& c = w.contracts[id];
  if (dm[c.buyer] <= t || dm[c.reference] <= t || dm[c.seller] <= t) return;
  double f = w.fee_mean;
  if (w.fee_sd != 0.0) f += w.fee_sd * rng::normal(opt.seed, kFeeStream, id, t);
  fees[id] += f;
}

void record(MicroState& st, const MicroWorld& w, const std::vector<int>& dm,
            const std::vector<ChannelLosses>& acc) {
  PerSector<double> dead{}, total{}, alive_n{}, alive_sum{}, alive_sq{};
  const int t = static_cast<int>(st.m[0].size());
  for (int i = 0; i < w.node_count(); ++i) {
    const auto s = index(w.sector[i]);
    const double l = std::accumulate(acc[i].begin(), acc[i].end(), 0.0);
    total[s] += l;
    if (dm[i] <= t) {
      dead[s] += 1.0;
    } else {
      alive_n[s] += 1.0;
      alive_sum[s] += l;
      alive_sq[s] += l * l;
    }
  }
  for (Sector sec : kSectors) {
    const auto s = index(sec);
    const double n = w.sizes[s];
    st.m[s].push_back(n > 0 ? dead[s] / n : 0.0);
    st.mean_loss[s].push_back(n > 0 ? total[s] / n : 0.0);
    const double mu = alive_n[s] > 0 ? alive_sum[s] / alive_n[s] : 0.0;
    st.alive_loss_mean[s].push_back(mu);
    st.alive_loss_var[s].push_back(alive_n[s] > 1 ? (alive_sq[s] - alive_n[s] * mu * mu) / (alive_n[s] - 1) : 0.0);
  }
}

MicroState simulate(const MicroWorld& w, double xi0, const SimulationOptions& opt, bool parallel) {
  const int n = w.node_count();
  if (w.link_begin.size() != std::size_t(n) + 1 || w.role_begin.size() != std::size_t(n) + 1)
    throw ConfigError("world not finalized");
  if (!opt.forced_default.empty() && opt.forced_default.size() != std::size_t(n))
    throw ConfigError("forced_default must have one entry per node");

  MicroState st;
  st.horizon = w.horizon;
  std::vector<int> dm(n, kNever);
  std::vector<int> next_dm(n, kNever);
  std::vector<ChannelLosses> acc(n, ChannelLosses{});
  std::vector<double> fees(w.contracts.size(), 0.0);
  const auto nc = static_cast<std::int64_t>(fees.size());
  const Stepper step{w, opt, xi0, dm, next_dm, acc, fees};

  for (int t = 0; t <= w.horizon; ++t) {
    if (parallel) {
      if (t >= 1) {
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < nc; ++c) accrue_fee(w, opt, dm, fees, c, t);
      }
#pragma omp parallel for schedule(static)
      for (int i = 0; i < n; ++i) step.node(i, t);
    } else {
      if (t >= 1)
        for (std::int64_t c = 0; c < nc; ++c) accrue_fee(w, opt, dm, fees, c, t);
      for (int i = 0; i < n; ++i) step.node(i, t);
    }
    record(st, w, dm, acc);
    dm = next_dm;
  }
  st.default_month = std::move(dm);
  st.loss = std::move(acc);
  return st;
}

}  // namespace

MicroState simulate_path(const MicroWorld& world, double xi0, const SimulationOptions& opt) {
  return simulate(world, xi0, opt, true);
}

MicroState simulate_path_serial(const MicroWorld& world, double xi0, const SimulationOptions& opt) {
  return simulate(world, xi0, opt, false);
}

void write_dump(std::ostream& out, const MicroWorld& world, const MicroState& state) {
  out << "node sector theta default_month\n";
  for (int i = 0; i < world.node_count(); ++i) {
    const int dm = state.default_month.at(i);
    out << i << ' ' << to_string(world.sector[i]) << ' ' << world.theta[i] << ' '
        << (dm == kNever ? -1 : dm) << '\n';
  }
}

}  // namespace cdsnet
