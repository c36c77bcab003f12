#include "cdsnet/risk_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdsnet/errors.hpp"
#include "cdsnet/normal.hpp"

namespace cdsnet {

Xi0Grid Xi0Grid::standard(int count, double tail) {
  if (count < 2) throw DomainError("xi0 grid needs at least two nodes");
  if (!(tail > 0.0 && tail < 0.5)) throw DomainError("xi0 grid tail must lie in (0,0.5)");
  Xi0Grid g;
  g.gaussian = true;
  const double lo = normal_quantile(tail);
  const double hi = normal_quantile(1.0 - tail);
  g.nodes.resize(count);
  for (int k = 0; k < count; ++k) g.nodes[k] = lo + (hi - lo) * k / (count - 1);
  g.weights.resize(count);
  double below = 0.0;
  for (int k = 0; k < count; ++k) {
    const double edge = k + 1 < count ? normal_cdf(0.5 * (g.nodes[k] + g.nodes[k + 1])) : 1.0;
    g.weights[k] = edge - below;
    below = edge;
  }
  return g;
}

Xi0Grid Xi0Grid::point(double xi0) {
  Xi0Grid g;
  g.nodes = {xi0};
  g.weights = {1.0};
  return g;
}

namespace {

RiskReport empty_report(const ScenarioSpec& spec, const Xi0Grid& grid) {
  RiskReport r;
  r.scenario = spec.name;
  r.gaussian = grid.gaussian;
  r.xi0 = grid.nodes;
  r.weight = grid.weights;
  r.loss.resize(grid.size());
  r.m.resize(grid.size());
  r.m_insurers.resize(grid.size());
  return r;
}

void fill(RiskReport& r, std::size_t k, const MacroTrajectory& tr) {
  r.loss[k] = tr.loss_per_node(Sector::B);
  r.m[k] = tr.default_fraction(Sector::B);
  r.m_insurers[k] = tr.default_fraction(Sector::I);
}

}  // namespace

RiskReport sweep(const ScenarioSpec& spec, const Xi0Grid& grid) {
  spec.validate();
  const QuadGrid q = build_grid(spec.heterogeneity, spec.noise);
  RiskReport r = empty_report(spec, grid);
  const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < n; ++k) fill(r, k, run_trajectory(spec, q, grid.nodes[k]));
  return r;
}

RiskReport sweep_serial(const ScenarioSpec& spec, const Xi0Grid& grid) {
  spec.validate();
  const QuadGrid q = build_grid(spec.heterogeneity, spec.noise);
  RiskReport r = empty_report(spec, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) fill(r, k, run_trajectory(spec, q, grid.nodes[k]));
  return r;
}

namespace {

// Law of X = v(xi0) for xi0 ~ N(0,1), with v linear between grid nodes and
// the two tails lumped onto the end values.
class Continuum {
 public:
  Continuum(const std::vector<double>& xi, const std::vector<double>& v) : xi_(xi), v_(v) {
    cdf_.resize(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k) cdf_[k] = normal_cdf(xi[k]);
  }

  double lower_atom() const { return cdf_.front(); }
  double upper_atom() const { return 1.0 - cdf_.back(); }

  // P(X <= x)
  double cdf(double x) const {
    double p = 0.0;
    if (v_.front() <= x) p += lower_atom();
    if (v_.back() <= x) p += upper_atom();
    for (std::size_t k = 0; k + 1 < xi_.size(); ++k) p += segment_below(k, x);
    return p;
  }

  // Mass of segment k with value in [a,b).
  double segment_between(std::size_t k, double a, double b) const {
    return segment_below_strict(k, b) - segment_below_strict(k, a);
  }

  std::size_t segments() const { return xi_.size() - 1; }

 private:
  double mass(std::size_t k) const { return cdf_[k + 1] - cdf_[k]; }

  // xi at which segment k crosses x, assuming it does
  double crossing(std::size_t k, double x) const {
    const double s = (x - v_[k]) / (v_[k + 1] - v_[k]);
    return xi_[k] + s * (xi_[k + 1] - xi_[k]);
  }

  // P(X <= x) restricted to segment k
  double segment_below(std::size_t k, double x) const {
    const double a = v_[k], b = v_[k + 1];
    if (a <= x && b <= x) return mass(k);
    if (a > x && b > x) return 0.0;
    const double c = normal_cdf(crossing(k, x));
    return a < b ? c - cdf_[k] : cdf_[k + 1] - c;
  }

  // P(X < x) restricted to segment k
  double segment_below_strict(std::size_t k, double x) const {
    const double a = v_[k], b = v_[k + 1];
    if (a < x && b < x) return mass(k);
    if (a >= x && b >= x) return 0.0;
    const double c = normal_cdf(crossing(k, x));
    return a < b ? c - cdf_[k] : cdf_[k + 1] - c;
  }

  const std::vector<double>& xi_;
  const std::vector<double>& v_;
  std::vector<double> cdf_;
};

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0,1)");
}

void check_nonempty(const RiskReport& r) {
  if (r.size() == 0) throw EmptyInput("risk report has no xi0 nodes");
}

}  // namespace

double weighted_quantile(const std::vector<double>& values, const std::vector<double>& weights,
                         double q) {
  check_q(q);
  if (values.empty()) throw EmptyInput("weighted_quantile: no values");
  if (values.size() != weights.size()) throw DomainError("weighted_quantile: size mismatch");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double acc = 0.0;
  for (std::size_t i : order) {
    acc += weights[i];
    if (acc >= q * total * (1.0 - 1e-14)) return values[i];
  }
  return values[order.back()];
}

double quantile(const RiskReport& r, Variable var, double q) {
  check_q(q);
  check_nonempty(r);
  const auto& v = r.values(var);
  if (!r.gaussian || r.size() < 2) return weighted_quantile(v, r.weight, q);
  const Continuum law(r.xi0, v);
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  if (law.cdf(lo) >= q) return lo;
  // invariant: cdf(lo) < q <= cdf(hi)
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (law.cdf(mid) >= q) hi = mid;
    else lo = mid;
  }
  return hi;
}

double mean(const RiskReport& r, Variable var) {
  check_nonempty(r);
  const auto& v = r.values(var);
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) s += r.weight[k] * v[k];
  return s;
}

double far(const RiskReport& r, double q) { return quantile(r, Variable::DefaultFraction, q) - mean(r, Variable::DefaultFraction); }

double value_at_risk(const RiskReport& r, double q) { return quantile(r, Variable::Loss, q); }

double DensityTable::at(double x) const {
  if (center.empty() || x < lo || x > hi) return 0.0;
  const auto b = std::min<std::size_t>(center.size() - 1, static_cast<std::size_t>((x - lo) / width));
  return density[b];
}

DensityTable density(const RiskReport& r, Variable var, int bins,
                     std::optional<std::pair<double, double>> range) {
  check_nonempty(r);
  if (bins < 1) throw DomainError("density: bins must be >= 1");
  const auto& v = r.values(var);
  DensityTable d;
  if (range) {
    d.lo = range->first;
    d.hi = range->second;
    if (!(d.hi > d.lo)) throw DomainError("density: empty range");
  } else {
    d.lo = *std::min_element(v.begin(), v.end());
    d.hi = *std::max_element(v.begin(), v.end());
  }
  if (d.hi == d.lo) {
    // point mass: one bin of unit width centred on the value
    d.lo -= 0.5;
    d.hi += 0.5;
    d.width = 1.0;
    d.center = {d.lo + 0.5};
    d.density = {1.0};
    return d;
  }
  d.width = (d.hi - d.lo) / bins;
  d.center.resize(bins);
  d.density.assign(bins, 0.0);
  for (int b = 0; b < bins; ++b) d.center[b] = d.lo + (b + 0.5) * d.width;

  auto bin_of = [&](double x) -> int {
    if (x < d.lo || x > d.hi) return -1;
    return std::min(bins - 1, static_cast<int>((x - d.lo) / d.width));
  };
  auto add_atom = [&](double x, double w) {
    if (int b = bin_of(x); b >= 0) d.density[b] += w;
  };

  if (!r.gaussian || r.size() < 2) {
    for (std::size_t k = 0; k < v.size(); ++k) add_atom(v[k], r.weight[k]);
  } else {
    const Continuum law(r.xi0, v);
    add_atom(v.front(), law.lower_atom());
    add_atom(v.back(), law.upper_atom());
    for (std::size_t k = 0; k < law.segments(); ++k) {
      const double a = std::min(v[k], v[k + 1]);
      const double c = std::max(v[k], v[k + 1]);
      if (a == c) {
        add_atom(a, law.segment_between(k, a, std::nextafter(a, INFINITY)));
        continue;
      }
      const int b0 = std::max(0, bin_of(std::max(a, d.lo)));
      const int b1 = bin_of(std::min(c, d.hi));
      for (int b = b0; b >= 0 && b <= b1; ++b) {
        const double hi = b + 1 == bins ? std::nextafter(d.hi, INFINITY) : d.lo + (b + 1) * d.width;
        d.density[b] += law.segment_between(k, d.lo + b * d.width, hi);
      }
    }
  }
  for (double& x : d.density) x /= d.width;
  return d;
}

std::vector<HedgeCurveRow> hedge_curve(const ScenarioSpec& base, Sector seller,
                                       const std::vector<double>& fractions, const Xi0Grid& grid) {
  std::vector<HedgeCurveRow> rows;
  rows.reserve(fractions.size());
  for (double f : fractions) {
    const RiskReport r = sweep(hedge_sweep(base, f, seller), grid);
    rows.push_back({f, mean(r, Variable::DefaultFraction), far(r, 0.99), value_at_risk(r, 0.99)});
  }
  return rows;
}

}  // namespace cdsnet
