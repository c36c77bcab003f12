#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cdsnet/scenario.hpp"
#include "cdsnet/sector.hpp"

namespace cdsnet {

// Sector default fractions m[s][tau], tau = 0..t, with m[s][0] = 0.
class DefaultHistory {
 public:
  DefaultHistory();
  // Throws ValidationError unless every row starts at 0, is non-decreasing,
  // lies in [0,1], and all rows have equal length.
  explicit DefaultHistory(PerSector<std::vector<double>> m);

  int clock() const noexcept { return static_cast<int>(m_[0].size()) - 1; }
  double at(Sector s, int tau) const { return m_[index(s)].at(tau); }
  const std::vector<double>& row(Sector s) const noexcept { return m_[index(s)]; }

  // Append m_{s,t+1}. Values are clamped up to the previous entry so that
  // rounding never breaks monotonicity.
  void push(const PerSector<double>& next);

 private:
  PerSector<std::vector<double>> m_;
};

enum class Channel : std::uint8_t { Direct, Unhedged, HedgeBuyer, HedgeSeller, SpecBuyer, SpecSeller };
std::string_view to_string(Channel c) noexcept;

// Mean and variance of a sector's per-node loss through one channel at time t.
// `mean` and `variance` are conditioned on the node being alive at t and are
// what drives the dynamics. `population_mean` averages over all nodes of the
// sector, survivors and defaulted alike; it is the per-node reporting figure.
struct ChannelMoments {
  Channel channel = Channel::Direct;
  Sector sector = Sector::F;
  int t = 0;
  double mean = 0.0;
  double variance = 0.0;
  double population_mean = 0.0;
};

// Each kernel sums over the entries of `stats` that belong to the channel
// with `bearer` in the loss-bearing role; other entries are ignored.
ChannelMoments direct_moments(const DefaultHistory& h, Sector bearer,
                              std::span<const PairExposureStats> stats, int t);
ChannelMoments unhedged_moments(const DefaultHistory& h, Sector bearer,
                                std::span<const PairExposureStats> stats,
                                const MoneyStreamSpec& money, int t);
ChannelMoments hedged_buyer_moments(const DefaultHistory& h, Sector bearer,
                                    std::span<const TripleExposureStats> stats,
                                    const MoneyStreamSpec& money, int t);
ChannelMoments hedged_seller_moments(const DefaultHistory& h, Sector bearer,
                                     std::span<const TripleExposureStats> stats,
                                     const MoneyStreamSpec& money, int t);
ChannelMoments spec_buyer_moments(const DefaultHistory& h, Sector bearer,
                                  std::span<const TripleExposureStats> stats,
                                  const MoneyStreamSpec& money, int t);
ChannelMoments spec_seller_moments(const DefaultHistory& h, Sector bearer,
                                   std::span<const TripleExposureStats> stats,
                                   const MoneyStreamSpec& money, int t);

struct SectorMoments {
  double mean = 0.0;
  double variance = 0.0;
  double population_mean = 0.0;
};

// Sum over all six channels for sector s.
SectorMoments total_moments(const ScenarioSpec& spec, const DefaultHistory& h, Sector s, int t);

// Per-channel breakdown, in Channel order.
std::vector<ChannelMoments> channel_breakdown(const ScenarioSpec& spec, const DefaultHistory& h,
                                              Sector s, int t);

}  // namespace cdsnet
