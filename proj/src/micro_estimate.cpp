#include <algorithm>
#include <cmath>

#include "cdsnet/errors.hpp"
#include "cdsnet/micro_oracle.hpp"
#include "cdsnet/random.hpp"

namespace cdsnet {

namespace {

struct Accumulator {
  std::vector<double> sum, sq;
  void add(const std::vector<double>& x) {
    if (sum.empty()) {
      sum.assign(x.size(), 0.0);
      sq.assign(x.size(), 0.0);
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
      sum[k] += x[k];
      sq[k] += x[k] * x[k];
    }
  }
  void finish(int r, std::vector<double>& mean, std::vector<double>* se) const {
    mean.resize(sum.size());
    if (se) se->resize(sum.size());
    for (std::size_t k = 0; k < sum.size(); ++k) {
      mean[k] = sum[k] / r;
      if (se) {
        const double var = r > 1 ? std::max(0.0, (sq[k] - r * mean[k] * mean[k]) / (r - 1)) : 0.0;
        (*se)[k] = std::sqrt(var / r);
      }
    }
  }
};

}  // namespace

MicroEstimate estimate_macro(const ScenarioSpec& spec, const MicroConfig& config, double xi0,
                             int replicas, bool redraw_exposures) {
  if (replicas < 1) throw DomainError("estimate_macro: replicas must be >= 1");
  PerSector<Accumulator> m, loss, var;
  for (int r = 0; r < replicas; ++r) {
    MicroConfig cfg = config;
    cfg.seed = rng::key(config.seed, 0xE57, static_cast<std::uint64_t>(r));
    const MicroWorld world = sample_world(spec, cfg);
    SimulationOptions opt;
    opt.seed = rng::key(cfg.seed, 0x9A7);
    opt.redraw_exposures = redraw_exposures;
    const MicroState st = simulate_path(world, xi0, opt);
    for (Sector s : kSectors) {
      m[index(s)].add(st.m[index(s)]);
      loss[index(s)].add(st.mean_loss[index(s)]);
      var[index(s)].add(st.alive_loss_var[index(s)]);
    }
  }
  MicroEstimate est;
  est.replicas = replicas;
  for (Sector s : kSectors) {
    const auto k = index(s);
    m[k].finish(replicas, est.m[k], &est.m_se[k]);
    loss[k].finish(replicas, est.loss[k], &est.loss_se[k]);
    var[k].finish(replicas, est.variance[k], nullptr);
  }
  return est;
}

}  // namespace cdsnet
