#include "cdsnet/loss_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdsnet/errors.hpp"
#include "cdsnet/two_time.hpp"

namespace cdsnet {

namespace {

void check_row(const std::vector<double>& row, Sector s) {
  const std::string where = "history[" + std::string(to_string(s)) + "]";
  if (row.empty() || row[0] != 0.0) throw ValidationError(where + ": must start at m=0");
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (!(row[k] >= 0.0 && row[k] <= 1.0)) throw ValidationError(where + ": values must lie in [0,1]");
    if (k > 0 && row[k] < row[k - 1]) throw ValidationError(where + ": must be non-decreasing");
  }
}

void check_time(const DefaultHistory& h, int t) {
  if (t < 0 || t > h.clock())
    throw DomainError("time " + std::to_string(t) + " outside recorded history 0.." +
                      std::to_string(h.clock()));
}

two_time::MeanField correlator(const DefaultHistory& h, Sector ref, Sector other) {
  return {&h.row(ref), &h.row(other)};
}

}  // namespace

DefaultHistory::DefaultHistory() {
  for (auto& row : m_) row.assign(1, 0.0);
}

DefaultHistory::DefaultHistory(PerSector<std::vector<double>> m) : m_(std::move(m)) {
  for (Sector s : kSectors) check_row(m_[index(s)], s);
  if (m_[0].size() != m_[1].size() || m_[0].size() != m_[2].size())
    throw ValidationError("history rows must have equal length");
}

void DefaultHistory::push(const PerSector<double>& next) {
  for (Sector s : kSectors) {
    auto& row = m_[index(s)];
    row.push_back(std::clamp(next[index(s)], row.back(), 1.0));
  }
}

std::string_view to_string(Channel c) noexcept {
  switch (c) {
    case Channel::Direct: return "d";
    case Channel::Unhedged: return "u";
    case Channel::HedgeBuyer: return "hb";
    case Channel::HedgeSeller: return "hs";
    case Channel::SpecBuyer: return "sb";
    case Channel::SpecSeller: return "ss";
  }
  return "?";
}

ChannelMoments direct_moments(const DefaultHistory& h, Sector bearer,
                              std::span<const PairExposureStats> stats, int t) {
  check_time(h, t);
  ChannelMoments out{Channel::Direct, bearer, t};
  for (const auto& p : stats) {
    if (p.channel != PairChannel::Direct || p.from != bearer) continue;
    const double m = h.at(p.to, t);
    out.mean += p.mean * m;
    out.variance += p.sd * p.sd * m;
  }
  out.population_mean = out.mean;
  return out;
}

ChannelMoments unhedged_moments(const DefaultHistory& h, Sector bearer,
                                std::span<const PairExposureStats> stats,
                                const MoneyStreamSpec& money, int t) {
  check_time(h, t);
  ChannelMoments out{Channel::Unhedged, bearer, t};
  for (const auto& p : stats) {
    if (p.channel != PairChannel::Unhedged || p.from != bearer) continue;
    const double eps = money.interest(p.from, p.to);
    const auto& m = h.row(p.to);
    double interest = 0.0;
    double g = 1.0;
    for (int tau = 1; tau <= t; ++tau) {
      interest += g * (1.0 - m[tau]);
      g *= 1.0 + eps;
    }
    const auto c = correlator(h, p.to, p.to);
    out.mean += p.mean * (m[t] - eps * interest);
    out.variance += p.sd * p.sd *
                    (m[t] + two_time::eps_eps(c, eps, t) - 2.0 * two_time::u_contagion_eps(c, eps, t));
  }
  out.population_mean = out.mean;
  return out;
}

ChannelMoments hedged_buyer_moments(const DefaultHistory& h, Sector bearer,
                                    std::span<const TripleExposureStats> stats,
                                    const MoneyStreamSpec& money, int t) {
  check_time(h, t);
  ChannelMoments out{Channel::HedgeBuyer, bearer, t};
  const auto& own = h.row(bearer);
  for (const auto& x : stats) {
    if (x.kind != CdsKind::Hedge || x.buyer != bearer) continue;
    const double eps = money.interest(x.buyer, x.reference);
    const double f0 = money.fee_mean;
    const auto& mr = h.row(x.reference);
    const auto& ms = h.row(x.seller);
    double mean = 0.0, pop = 0.0, g = 1.0;
    for (int tau = 1; tau <= t; ++tau) {
      const double jump = (mr[tau] - mr[tau - 1]) * ms[tau];
      const double fee = f0 * (1.0 - mr[tau]) * (1.0 - ms[tau]);
      const double interest = eps * g * (1.0 - mr[tau]);
      mean += jump + fee - interest;
      pop += jump + fee * (1.0 - own[tau]) - interest;
      g *= 1.0 + eps;
    }
    const auto c = correlator(h, x.reference, x.seller);
    const double var = two_time::hb_cc(c, t) + two_time::fee_fee(c, f0, money.fee_var, t) +
                       two_time::eps_eps(c, eps, t) + 2.0 * two_time::hb_cf(c, f0, t) -
                       2.0 * two_time::hb_ceps(c, eps, t) - 2.0 * two_time::fee_eps(c, f0, eps, t);
    out.mean += x.mean * mean;
    out.population_mean += x.mean * pop;
    out.variance += x.sd * x.sd * var;
  }
  return out;
}

namespace {

// Shared by both protection-seller positions: pays out on reference default
// while alive, receives fees while all three parties are alive.
ChannelMoments seller_moments(Channel channel, CdsKind kind, const DefaultHistory& h, Sector bearer,
                              std::span<const TripleExposureStats> stats,
                              const MoneyStreamSpec& money, int t) {
  ChannelMoments out{channel, bearer, t};
  const auto& own = h.row(bearer);
  const double f0 = money.fee_mean;
  for (const auto& x : stats) {
    if (x.kind != kind || x.seller != bearer) continue;
    const auto& mr = h.row(x.reference);
    const auto& mb = h.row(x.buyer);
    double fees = 0.0, pop = 0.0;
    for (int tau = 1; tau <= t; ++tau) {
      const double alive = (1.0 - mr[tau]) * (1.0 - mb[tau]);
      fees += alive;
      pop += (1.0 - own[tau]) * ((mr[tau] - mr[tau - 1]) - f0 * alive);
    }
    const auto c = correlator(h, x.reference, x.buyer);
    const double cf = kind == CdsKind::Hedge ? two_time::hs_cf(c, f0, t) : two_time::ss_cf(c, f0, t);
    const double cc = kind == CdsKind::Hedge ? two_time::hs_cc(c, t) : two_time::ss_cc(c, t);
    out.mean += x.mean * (mr[t] - f0 * fees);
    out.population_mean += x.mean * pop;
    out.variance += x.sd * x.sd * (cc + two_time::fee_fee(c, f0, money.fee_var, t) - 2.0 * cf);
  }
  return out;
}

}  // namespace

ChannelMoments hedged_seller_moments(const DefaultHistory& h, Sector bearer,
                                     std::span<const TripleExposureStats> stats,
                                     const MoneyStreamSpec& money, int t) {
  check_time(h, t);
  return seller_moments(Channel::HedgeSeller, CdsKind::Hedge, h, bearer, stats, money, t);
}

ChannelMoments spec_seller_moments(const DefaultHistory& h, Sector bearer,
                                   std::span<const TripleExposureStats> stats,
                                   const MoneyStreamSpec& money, int t) {
  check_time(h, t);
  return seller_moments(Channel::SpecSeller, CdsKind::Speculative, h, bearer, stats, money, t);
}

ChannelMoments spec_buyer_moments(const DefaultHistory& h, Sector bearer,
                                  std::span<const TripleExposureStats> stats,
                                  const MoneyStreamSpec& money, int t) {
  check_time(h, t);
  ChannelMoments out{Channel::SpecBuyer, bearer, t};
  const auto& own = h.row(bearer);
  const double f0 = money.fee_mean;
  for (const auto& x : stats) {
    if (x.kind != CdsKind::Speculative || x.buyer != bearer) continue;
    const auto& mr = h.row(x.reference);
    const auto& ms = h.row(x.seller);
    double mean = 0.0, pop = 0.0;
    for (int tau = 1; tau <= t; ++tau) {
      const double payout = (mr[tau] - mr[tau - 1]) * (1.0 - ms[tau]);
      const double fee = f0 * (1.0 - mr[tau]) * (1.0 - ms[tau]);
      mean += payout - fee;
      pop += payout - fee * (1.0 - own[tau]);
    }
    const auto c = correlator(h, x.reference, x.seller);
    out.mean -= x.mean * mean;
    out.population_mean -= x.mean * pop;
    out.variance += x.sd * x.sd *
                    (two_time::sb_cc(c, t) + two_time::fee_fee(c, f0, money.fee_var, t) -
                     2.0 * two_time::sb_cf(c, f0, t));
  }
  return out;
}

std::vector<ChannelMoments> channel_breakdown(const ScenarioSpec& spec, const DefaultHistory& h,
                                              Sector s, int t) {
  std::span<const PairExposureStats> pairs(spec.pair_stats);
  std::span<const TripleExposureStats> triples(spec.triple_stats);
  return {
      direct_moments(h, s, pairs, t),
      unhedged_moments(h, s, pairs, spec.money, t),
      hedged_buyer_moments(h, s, triples, spec.money, t),
      hedged_seller_moments(h, s, triples, spec.money, t),
      spec_buyer_moments(h, s, triples, spec.money, t),
      spec_seller_moments(h, s, triples, spec.money, t),
  };
}

SectorMoments total_moments(const ScenarioSpec& spec, const DefaultHistory& h, Sector s, int t) {
  SectorMoments out;
  for (const auto& c : channel_breakdown(spec, h, s, t)) {
    out.mean += c.mean;
    out.variance += c.variance;
    out.population_mean += c.population_mean;
  }
  return out;
}

}  // namespace cdsnet
