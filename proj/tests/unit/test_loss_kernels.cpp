#include <cmath>
#include <functional>
#include <random>

#include "cdsnet/errors.hpp"
#include "cdsnet/loss_kernels.hpp"
#include "cdsnet/scenario.hpp"
#include "doctest.h"

using namespace cdsnet;
using doctest::Approx;

namespace {

using Row = std::vector<double>;

DefaultHistory history(Row f, Row b, Row i) { return DefaultHistory({std::move(f), std::move(b), std::move(i)}); }

DefaultHistory zeros(int t) { return history(Row(t + 1, 0.0), Row(t + 1, 0.0), Row(t + 1, 0.0)); }

Row random_row(std::mt19937_64& gen, int t, double scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Row r(t + 1, 0.0);
  for (int k = 1; k <= t; ++k) r[k] = std::min(1.0, r[k - 1] + scale * u(gen) * u(gen));
  return r;
}

DefaultHistory random_history(std::mt19937_64& gen, int t) {
  std::uniform_real_distribution<double> u(0.0, 0.3);
  return history(random_row(gen, t, u(gen)), random_row(gen, t, u(gen)), random_row(gen, t, u(gen)));
}

MoneyStreamSpec money(double eps, double f0, double f2) {
  MoneyStreamSpec m;
  m.monthly_interest = eps;
  m.fee_mean = f0;
  m.fee_var = f2;
  return m;
}

std::vector<PairExposureStats> pair(PairChannel c, Sector from, Sector to, double mean, double sd) {
  return {{c, from, to, mean, sd, 0.0}};
}

std::vector<TripleExposureStats> triple(CdsKind k, Sector b, Sector r, Sector s, double mean, double sd) {
  return {{k, b, r, s, mean, sd}};
}

// Exact expectation over independent default months of two counterparties
// whose marginals are the history rows. f(nj, nk) returns the deterministic
// part of the per-unit loss and the number of fee months (for the fee noise
// contribution to the second moment).
struct Moments {
  double mean = 0.0;
  double second = 0.0;
};

std::vector<int> path(int d, int t) {
  std::vector<int> n(t + 1, 0);
  for (int k = 1; k <= t; ++k) n[k] = k >= d;
  return n;
}

double month_mass(const Row& m, int d, int t) { return d <= t ? m[d] - m[d - 1] : 1.0 - m[t]; }

Moments enumerate(const Row& mj, const Row& mk, int t, double f2,
                  const std::function<std::pair<double, int>(const std::vector<int>&, const std::vector<int>&)>& f) {
  Moments out;
  for (int dj = 1; dj <= t + 1; ++dj)
    for (int dk = 1; dk <= t + 1; ++dk) {
      const double w = month_mass(mj, dj, t) * month_mass(mk, dk, t);
      if (w == 0.0) continue;
      const auto [x, fee_months] = f(path(dj, t), path(dk, t));
      out.mean += w * x;
      out.second += w * (x * x + f2 * fee_months);
    }
  return out;
}

double gr(double eps, int tau) { return std::pow(1.0 + eps, tau - 1); }

}  // namespace

TEST_CASE("direct channel") {
  const auto z = zeros(3);
  const auto ff = pair(PairChannel::Direct, Sector::F, Sector::F, 1.0, 1.0);
  auto m = direct_moments(z, Sector::F, ff, 3);
  CHECK(m.mean == 0.0);
  CHECK(m.variance == 0.0);

  const auto h = history({0, 0.1}, {0, 0.2}, {0, 0});
  m = direct_moments(h, Sector::F, ff, 1);
  CHECK(m.mean == Approx(0.1));
  CHECK(m.variance == Approx(0.1));

  auto two = ff;
  two.push_back({PairChannel::Direct, Sector::F, Sector::B, 0.0, 0.5, 0.0});
  m = direct_moments(h, Sector::F, two, 1);
  CHECK(m.mean == Approx(0.1));
  CHECK(m.variance == Approx(0.15));
  CHECK_THROWS_AS(direct_moments(h, Sector::F, ff, 2), DomainError);
}

TEST_CASE("unhedged loans") {
  const auto bf = pair(PairChannel::Unhedged, Sector::B, Sector::F, 1.0, 0.5);
  const auto mon = money(0.005, 0.0008, 0.0002);
  CHECK(unhedged_moments(zeros(1), Sector::B, bf, mon, 1).mean == Approx(-0.005).epsilon(1e-12));
  CHECK(unhedged_moments(zeros(12), Sector::B, bf, mon, 12).mean == Approx(-0.0616778).epsilon(1e-6));

  std::mt19937_64 gen(3);
  const auto h = random_history(gen, 12);
  const auto u = unhedged_moments(h, Sector::B, bf, money(0.0, 0.0008, 0.0002), 12);
  const auto d = direct_moments(h, Sector::B, pair(PairChannel::Direct, Sector::B, Sector::F, 1.0, 0.5), 12);
  CHECK(u.mean == Approx(d.mean).epsilon(1e-14));
  CHECK(u.variance == Approx(d.variance).epsilon(1e-14));
}

TEST_CASE("hedged buyer") {
  const auto hb = triple(CdsKind::Hedge, Sector::B, Sector::F, Sector::B, 1.0, 1.0);
  const auto mon = money(0.005, 0.0008, 0.0002);
  const auto m = hedged_buyer_moments(zeros(1), Sector::B, hb, mon, 1);
  CHECK(m.mean == Approx(-0.0042).epsilon(1e-12));
  CHECK(m.variance == Approx(2.1764e-4).epsilon(1e-4));

  // seller already gone when the reference defaults: the hedge is worthless
  const auto dead = history({0, 1}, {0, 0}, {0, 1});
  const auto hi = triple(CdsKind::Hedge, Sector::B, Sector::F, Sector::I, 2.0, 0.7);
  const auto w = hedged_buyer_moments(dead, Sector::B, hi, money(0, 0, 0), 1);
  CHECK(w.mean == Approx(2.0));
  CHECK(w.variance == Approx(0.49));
}

TEST_CASE("hedged seller") {
  const auto hs = triple(CdsKind::Hedge, Sector::B, Sector::F, Sector::I, 1.0, 0.5);
  CHECK(hedged_seller_moments(zeros(1), Sector::I, hs, money(0.005, 0.0008, 0.0002), 1).mean ==
        Approx(-0.0008));
  const auto jump = history({0, 1}, {0, 0}, {0, 0});
  const auto m = hedged_seller_moments(jump, Sector::I, hs, money(0, 0, 0), 1);
  CHECK(m.mean == Approx(1.0));
  CHECK(m.variance == Approx(0.25));
  const auto none = hedged_seller_moments(zeros(4), Sector::I, hs, money(0.005, 0, 0), 4);
  CHECK(none.mean == 0.0);
  CHECK(none.variance == 0.0);
  // the buyer side of the same entry is not a seller position
  CHECK(hedged_seller_moments(jump, Sector::B, hs, money(0, 0, 0), 1).mean == 0.0);
}

TEST_CASE("speculative buyer") {
  const auto sb = triple(CdsKind::Speculative, Sector::B, Sector::F, Sector::B, 1.0, 0.5);
  CHECK(spec_buyer_moments(zeros(1), Sector::B, sb, money(0.005, 0.0008, 0.0002), 1).mean == Approx(0.0008));
  const auto jump = history({0, 1}, {0, 0}, {0, 0});
  CHECK(spec_buyer_moments(jump, Sector::B, sb, money(0, 0, 0), 1).mean == Approx(-1.0));
  const auto dead = history({0, 1}, {0, 1}, {0, 0});
  CHECK(spec_buyer_moments(dead, Sector::B, sb, money(0, 0, 0), 1).mean == 0.0);
}

TEST_CASE("speculative seller") {
  const auto ss = triple(CdsKind::Speculative, Sector::B, Sector::F, Sector::B, 1.0, 0.5);
  CHECK(spec_seller_moments(zeros(1), Sector::B, ss, money(0.005, 0.0008, 0.0002), 1).mean == Approx(-0.0008));
  const auto jump = history({0, 1}, {0, 0}, {0, 0});
  CHECK(spec_seller_moments(jump, Sector::B, ss, money(0, 0, 0), 1).mean == Approx(1.0));
  const auto empty = triple(CdsKind::Speculative, Sector::B, Sector::F, Sector::B, 0.0, 0.0);
  std::mt19937_64 gen(5);
  const auto m = spec_seller_moments(random_history(gen, 12), Sector::B, empty, money(0.005, 0.0008, 0.0002), 12);
  CHECK(m.mean == 0.0);
  CHECK(m.variance == 0.0);
}

TEST_CASE("sector totals") {
  const auto s0 = builtin_scenario("S0");
  std::mt19937_64 gen(11);
  const auto h = random_history(gen, 12);
  const auto firms = channel_breakdown(s0, h, Sector::F, 12);
  for (std::size_t c = 1; c < firms.size(); ++c) {
    CHECK(firms[c].mean == 0.0);
    CHECK(firms[c].variance == 0.0);
  }
  CHECK(firms[0].mean > 0.0);
  CHECK(total_moments(s0, zeros(1), Sector::B, 1).mean == Approx(-0.005).epsilon(1e-12));

  const auto s9 = builtin_scenario("S9");
  const auto parts = channel_breakdown(s9, h, Sector::B, 12);
  const auto total = total_moments(s9, h, Sector::B, 12);
  double mean = 0, var = 0;
  for (const auto& p : parts) {
    mean += p.mean;
    var += p.variance;
  }
  CHECK(total.mean == Approx(mean).epsilon(1e-15));
  CHECK(total.variance == Approx(var).epsilon(1e-15));
  CHECK(parts[4].mean != 0.0);
  CHECK(parts[5].mean != 0.0);
}

TEST_CASE("variances are non-negative on random monotone histories") {
  std::mt19937_64 gen(17);
  const auto mon = money(0.005, 0.0008, 0.0002);
  for (int r = 0; r < 300; ++r) {
    const auto h = random_history(gen, 12);
    for (const char* name : {"S0", "S2", "S5", "S7", "S9", "S12", "S~10"}) {
      const auto spec = builtin_scenario(name);
      for (Sector s : kSectors)
        for (int t = 0; t <= 12; ++t)
          for (const auto& c : channel_breakdown(spec, h, s, t)) REQUIRE(c.variance >= -1e-15);
    }
    // a strongly fee-dominated contract
    const auto big = money(0.05, 0.3, 0.0);
    for (int t = 1; t <= 12; ++t) {
      REQUIRE(hedged_buyer_moments(h, Sector::B, triple(CdsKind::Hedge, Sector::B, Sector::F, Sector::I, 1, 1), big, t).variance >= 0.0);
      REQUIRE(spec_buyer_moments(h, Sector::B, triple(CdsKind::Speculative, Sector::B, Sector::F, Sector::I, 1, 1), big, t).variance >= 0.0);
      REQUIRE(spec_seller_moments(h, Sector::I, triple(CdsKind::Speculative, Sector::B, Sector::F, Sector::I, 1, 1), mon, t).variance >= 0.0);
    }
  }
}

TEST_CASE("kernels equal exact expectations over counterparty default months") {
  std::mt19937_64 gen(23);
  const double eps = 0.02, f0 = 0.01, f2 = 0.003;
  const auto mon = money(eps, f0, f2);
  for (int r = 0; r < 200; ++r) {
    const auto h = random_history(gen, 12);
    const Row& mf = h.row(Sector::F);
    const Row& mi = h.row(Sector::I);
    for (int t = 1; t <= 12; ++t) {
      // unhedged loan to F
      auto e = enumerate(mf, mf, t, 0.0, [&](const auto& j, const auto&) {
        double x = j[t];
        for (int a = 1; a <= t; ++a) x -= eps * gr(eps, a) * (1 - j[a]);
        return std::pair{x, 0};
      });
      auto k = unhedged_moments(h, Sector::B, pair(PairChannel::Unhedged, Sector::B, Sector::F, 1, 1), mon, t);
      REQUIRE(k.mean == Approx(e.mean).epsilon(1e-12));
      REQUIRE(k.variance == Approx(e.second).epsilon(1e-12));

      // hedged loan on F bought from I
      e = enumerate(mf, mi, t, f2, [&](const auto& j, const auto& s) {
        double x = 0;
        int fees = 0;
        for (int a = 1; a <= t; ++a) {
          const int alive = (1 - j[a]) * (1 - s[a]);
          x += (j[a] - j[a - 1]) * s[a] + f0 * alive - eps * gr(eps, a) * (1 - j[a]);
          fees += alive;
        }
        return std::pair{x, fees};
      });
      k = hedged_buyer_moments(h, Sector::B, triple(CdsKind::Hedge, Sector::B, Sector::F, Sector::I, 1, 1), mon, t);
      REQUIRE(k.mean == Approx(e.mean).epsilon(1e-12));
      REQUIRE(k.variance == Approx(e.second).epsilon(1e-12));

      // protection sold by I to B on F; the third party is the buyer
      e = enumerate(mf, h.row(Sector::B), t, f2, [&](const auto& j, const auto& b) {
        double x = j[t];
        int fees = 0;
        for (int a = 1; a <= t; ++a) {
          const int alive = (1 - j[a]) * (1 - b[a]);
          x -= f0 * alive;
          fees += alive;
        }
        return std::pair{x, fees};
      });
      for (CdsKind kind : {CdsKind::Hedge, CdsKind::Speculative}) {
        const auto tr = triple(kind, Sector::B, Sector::F, Sector::I, 1, 1);
        k = kind == CdsKind::Hedge ? hedged_seller_moments(h, Sector::I, tr, mon, t)
                                   : spec_seller_moments(h, Sector::I, tr, mon, t);
        REQUIRE(k.mean == Approx(e.mean).epsilon(1e-12));
        REQUIRE(k.variance == Approx(e.second).epsilon(1e-12));
      }

      // speculative protection bought from I
      e = enumerate(mf, mi, t, f2, [&](const auto& j, const auto& s) {
        double x = 0;
        int fees = 0;
        for (int a = 1; a <= t; ++a) {
          const int alive = (1 - j[a]) * (1 - s[a]);
          x -= (j[a] - j[a - 1]) * (1 - s[a]) - f0 * alive;
          fees += alive;
        }
        return std::pair{x, fees};
      });
      k = spec_buyer_moments(h, Sector::B, triple(CdsKind::Speculative, Sector::B, Sector::F, Sector::I, 1, 1), mon, t);
      REQUIRE(k.mean == Approx(e.mean).epsilon(1e-12));
      REQUIRE(k.variance == Approx(e.second).epsilon(1e-12));
    }
  }
}

TEST_CASE("intra-bank CDS leave the per-bank loss unchanged") {
  std::mt19937_64 gen(29);
  const auto s0 = builtin_scenario("S0");
  std::vector<ScenarioSpec> variants{builtin_scenario("S3"), builtin_scenario("S4"),
                                     hedge_sweep(s0, 1.0, Sector::B), builtin_scenario("S9"),
                                     builtin_scenario("S10"), speculative_sweep(s0, 3.0, Sector::B)};
  double worst = 0.0;
  for (int r = 0; r < 500; ++r) {
    const auto h = random_history(gen, 12);
    for (int t = 0; t <= 12; ++t) {
      const double base = total_moments(s0, h, Sector::B, t).population_mean;
      for (const auto& v : variants)
        worst = std::max(worst, std::abs(total_moments(v, h, Sector::B, t).population_mean - base));
    }
  }
  CHECK(worst < 1e-12);

  // speculative buyer and seller means cancel for matched notional
  const auto h = random_history(gen, 12);
  const auto sb = triple(CdsKind::Speculative, Sector::B, Sector::F, Sector::B, 1.3, 0.2);
  const auto mon = money(0.005, 0.0008, 0.0002);
  for (int t = 0; t <= 12; ++t) {
    const double sum = spec_buyer_moments(h, Sector::B, sb, mon, t).population_mean +
                       spec_seller_moments(h, Sector::B, sb, mon, t).population_mean;
    CHECK(std::abs(sum) < 1e-15);
  }
}

TEST_CASE("history validation") {
  CHECK_THROWS_AS(history({0, 0.2, 0.1}, {0, 0, 0}, {0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(history({0.1}, {0}, {0}), ValidationError);
  CHECK_THROWS_AS(history({0, 1.2}, {0, 0}, {0, 0}), ValidationError);
  CHECK_THROWS_AS(history({0, 0}, {0}, {0, 0}), ValidationError);
  DefaultHistory h;
  CHECK(h.clock() == 0);
  h.push({0.1, 0.2, 0.3});
  h.push({0.05, 0.3, 1.2});
  CHECK(h.clock() == 2);
  CHECK(h.at(Sector::F, 2) == 0.1);
  CHECK(h.at(Sector::I, 2) == 1.0);
}
