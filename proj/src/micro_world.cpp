#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cdsnet/errors.hpp"
#include "cdsnet/macro_engine.hpp"
#include "cdsnet/micro_oracle.hpp"
#include "cdsnet/normal.hpp"
#include "cdsnet/random.hpp"

namespace cdsnet {

int first_node(const PerSector<int>& sizes, Sector s) noexcept {
  int first = 0;
  for (Sector r : kSectors) {
    if (r == s) break;
    first += sizes[index(r)];
  }
  return first;
}

namespace {

// Visit the successes of independent Bernoulli(p) trials over [0, n) by
// geometric skipping.
template <class F>
void bernoulli_walk(std::mt19937_64& gen, std::int64_t n, double p, F&& visit) {
  if (n <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::int64_t k = 0; k < n; ++k) visit(k);
    return;
  }
  std::geometric_distribution<std::int64_t> skip(p);
  for (std::int64_t k = skip(gen); k < n; k += 1 + skip(gen)) visit(k);
}


}  // namespace

std::vector<PairLink> sample_pair_graph(const PerSector<int>& sizes, double connectivity,
                                        const PairExposureStats& stats,
                                        const MoneyStreamSpec& money, std::uint64_t seed) {
  const int n_from = sizes[index(stats.from)];
  const int n_to = sizes[index(stats.to)];
  if (!(connectivity > 0.0) || connectivity >= n_to)
    throw ConfigError("connectivity " + std::to_string(connectivity) + " must lie in (0, N_" +
                      std::string(to_string(stats.to)) + ")");
  std::vector<PairLink> links;
  if (stats.mean == 0.0 && stats.sd == 0.0) return links;

  const double p = connectivity / n_to;
  const double eps = stats.channel == PairChannel::Unhedged ? money.interest(stats.from, stats.to) : 0.0;
  const int base_from = first_node(sizes, stats.from);
  const int base_to = first_node(sizes, stats.to);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z;
  links.reserve(static_cast<std::size_t>(1.1 * n_from * connectivity) + 16);

  const double base = stats.mean / connectivity;
  const double scale = stats.sd / std::sqrt(connectivity);
  auto push = [&](int owner, int target, double x) {
    links.push_back({owner, target, base + scale * x, base, scale, stats.channel, eps});
  };

  if (stats.from == stats.to) {
    const double kappa = stats.kappa;
    const double rest = std::sqrt(std::max(0.0, 1.0 - kappa * kappa));
    for (int i = 0; i < n_from; ++i) {
      bernoulli_walk(gen, n_from - i - 1, p, [&](std::int64_t k) {
        const int j = i + 1 + static_cast<int>(k);
        const double x1 = z(gen);
        const double x2 = kappa * x1 + rest * z(gen);
        push(base_from + i, base_from + j, x1);
        push(base_from + j, base_from + i, x2);
      });
    }
  } else {
    for (int i = 0; i < n_from; ++i) {
      bernoulli_walk(gen, n_to, p, [&](std::int64_t k) {
        push(base_from + i, base_to + static_cast<int>(k), z(gen));
      });
    }
  }
  return links;
}

std::vector<Contract> sample_cds_hypergraph(const PerSector<int>& sizes, double connectivity,
                                            const TripleExposureStats& stats,
                                            const MoneyStreamSpec& money, std::uint64_t seed) {
  const std::int64_t n_ref = sizes[index(stats.reference)];
  const std::int64_t n_sel = sizes[index(stats.seller)];
  if (!(connectivity > 0.0) || connectivity >= double(n_ref * n_sel))
    throw ConfigError("triple connectivity must lie in (0, N_ref * N_seller)");
  std::vector<Contract> out;
  if (stats.mean == 0.0 && stats.sd == 0.0) return out;

  const double p = connectivity / double(n_ref * n_sel);
  const double eps = stats.kind == CdsKind::Hedge ? money.interest(stats.buyer, stats.reference) : 0.0;
  const int n_buy = sizes[index(stats.buyer)];
  const int base_buy = first_node(sizes, stats.buyer);
  const int base_ref = first_node(sizes, stats.reference);
  const int base_sel = first_node(sizes, stats.seller);
  const double base = stats.mean / connectivity;
  const double scale = stats.sd / std::sqrt(connectivity);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z;
  out.reserve(static_cast<std::size_t>(1.1 * n_buy * connectivity) + 16);

  for (int i = 0; i < n_buy; ++i) {
    const int buyer = base_buy + i;
    bernoulli_walk(gen, n_ref * n_sel, p, [&](std::int64_t k) {
      const int ref = base_ref + static_cast<int>(k / n_sel);
      const int sel = base_sel + static_cast<int>(k % n_sel);
      if (ref == buyer || sel == buyer || ref == sel) return;
      out.push_back({buyer, ref, sel, base + scale * z(gen), base, scale, stats.kind, eps});
    });
  }
  return out;
}

void MicroWorld::finalize() {
  const int n = node_count();
  std::stable_sort(links.begin(), links.end(),
                   [](const PairLink& a, const PairLink& b) { return a.owner < b.owner; });
  link_begin.assign(n + 1, 0);
  for (const auto& l : links) ++link_begin[l.owner + 1];
  for (int i = 0; i < n; ++i) link_begin[i + 1] += link_begin[i];

  role_begin.assign(n + 1, 0);
  for (const auto& c : contracts) {
    ++role_begin[c.buyer + 1];
    ++role_begin[c.seller + 1];
  }
  for (int i = 0; i < n; ++i) role_begin[i + 1] += role_begin[i];
  role_contract.assign(role_begin[n], 0);
  std::vector<std::size_t> fill(role_begin.begin(), role_begin.end() - 1);
  for (std::size_t c = 0; c < contracts.size(); ++c) {
    role_contract[fill[contracts[c].buyer]++] = static_cast<std::int32_t>(c);
    role_contract[fill[contracts[c].seller]++] = static_cast<std::int32_t>(c);
  }
}

MicroWorld blank_world(const ScenarioSpec& spec, const PerSector<int>& sizes) {
  MicroWorld w;
  w.sizes = sizes;
  w.sigma = spec.noise.sigma;
  w.fee_mean = spec.money.fee_mean;
  w.fee_sd = std::sqrt(spec.money.fee_var);
  w.horizon = spec.horizon;
  for (Sector s : kSectors) {
    if (sizes[index(s)] < 0) throw ConfigError("sector sizes must be non-negative");
    const double theta = spec.heterogeneity.theta_mean[index(s)];
    const double rho = basel_rho(annual_pd(normal_cdf(-theta)));
    for (int k = 0; k < sizes[index(s)]; ++k) {
      w.sector.push_back(s);
      w.theta.push_back(theta);
      w.rho.push_back(rho);
    }
  }
  w.finalize();
  return w;
}

MicroWorld sample_world(const ScenarioSpec& spec, const MicroConfig& config) {
  spec.validate();
  MicroWorld w = blank_world(spec, config.sizes);
  const double sd = spec.heterogeneity.theta_sd;
  for (int i = 0; i < w.node_count(); ++i) {
    const double theta = spec.heterogeneity.theta_mean[index(w.sector[i])] +
                         sd * rng::normal(config.seed, 0x7E7A, static_cast<std::uint64_t>(i), 0);
    w.theta[i] = theta;
    w.rho[i] = basel_rho(annual_pd(normal_cdf(-theta)));
  }
  for (std::size_t e = 0; e < spec.pair_stats.size(); ++e) {
    auto links = sample_pair_graph(config.sizes, config.connectivity, spec.pair_stats[e], spec.money,
                                   rng::key(config.seed, 0x9A12, e));
    w.links.insert(w.links.end(), links.begin(), links.end());
  }
  for (std::size_t e = 0; e < spec.triple_stats.size(); ++e) {
    auto cs = sample_cds_hypergraph(config.sizes, config.connectivity, spec.triple_stats[e],
                                    spec.money, rng::key(config.seed, 0x7219, e));
    w.contracts.insert(w.contracts.end(), cs.begin(), cs.end());
  }
  w.finalize();
  return w;
}

}  // namespace cdsnet
