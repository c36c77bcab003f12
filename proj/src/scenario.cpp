#include "cdsnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cdsnet/errors.hpp"

namespace cdsnet {

std::string_view to_string(PairChannel c) noexcept {
  return c == PairChannel::Direct ? "d" : "u";
}

std::string_view to_string(CdsKind k) noexcept {
  return k == CdsKind::Hedge ? "hedge" : "speculative";
}

double MoneyStreamSpec::interest(Sector lender, Sector borrower) const noexcept {
  for (const auto& o : overrides)
    if (o.lender == lender && o.borrower == borrower) return o.rate;
  return monthly_interest;
}

const PairExposureStats* ScenarioSpec::find_pair(PairChannel channel, Sector from,
                                                 Sector to) const noexcept {
  for (const auto& p : pair_stats)
    if (p.channel == channel && p.from == from && p.to == to) return &p;
  return nullptr;
}

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

bool is_financial(Sector s) { return s == Sector::B || s == Sector::I; }

std::string pair_label(const PairExposureStats& p) {
  std::ostringstream os;
  os << "pair_stats[" << to_string(p.channel) << ", " << to_string(p.from) << "->"
     << to_string(p.to) << "]";
  return os.str();
}

std::string triple_label(const TripleExposureStats& t) {
  std::ostringstream os;
  os << "triple_stats[" << to_string(t.kind) << ", " << to_string(t.buyer) << ","
     << to_string(t.reference) << "," << to_string(t.seller) << "]";
  return os.str();
}

}  // namespace

void ScenarioSpec::validate() const {
  if (name.empty()) invalid("name", "must not be empty");
  if (horizon < 1) invalid("horizon", "must be at least one month");

  for (std::size_t a = 0; a < pair_stats.size(); ++a) {
    const auto& p = pair_stats[a];
    const auto where = pair_label(p);
    if (!std::isfinite(p.mean)) invalid(where, "mean must be finite");
    if (!(p.sd >= 0.0) || !std::isfinite(p.sd)) invalid(where, "sd_exposure must be >= 0");
    if (!(p.kappa >= -1.0 && p.kappa <= 1.0)) invalid(where, "kappa must lie in [-1,1]");
    if (p.channel == PairChannel::Unhedged && !is_financial(p.from))
      invalid(where, "only banks and insurers extend loans");
    for (std::size_t b = 0; b < a; ++b) {
      const auto& q = pair_stats[b];
      if (q.channel == p.channel && q.from == p.from && q.to == p.to)
        invalid(where, "duplicate entry");
    }
  }

  for (std::size_t a = 0; a < triple_stats.size(); ++a) {
    const auto& t = triple_stats[a];
    const auto where = triple_label(t);
    if (!std::isfinite(t.mean)) invalid(where, "mean must be finite");
    if (!(t.sd >= 0.0) || !std::isfinite(t.sd)) invalid(where, "sd_exposure must be >= 0");
    if (!is_financial(t.buyer)) invalid(where, "protection buyer must be a bank or insurer");
    if (!is_financial(t.seller)) invalid(where, "protection seller must be a bank or insurer");
    for (std::size_t b = 0; b < a; ++b) {
      const auto& q = triple_stats[b];
      if (q.kind == t.kind && q.buyer == t.buyer && q.reference == t.reference &&
          q.seller == t.seller)
        invalid(where, "duplicate entry");
    }
  }

  if (!(noise.sigma > 0.0)) invalid("noise.sigma", "must be > 0");

  if (!(heterogeneity.theta_sd > 0.0)) invalid("heterogeneity.theta_sd", "must be > 0");
  if (heterogeneity.quadrature_nodes < 16)
    invalid("heterogeneity.quadrature_nodes", "must be >= 16");
  for (double m : heterogeneity.theta_mean)
    if (!std::isfinite(m)) invalid("heterogeneity.theta_mean", "must be finite");

  if (!(money.monthly_interest >= 0.0)) invalid("money.monthly_interest", "must be >= 0");
  for (const auto& o : money.overrides)
    if (!(o.rate >= 0.0)) invalid("money.interest_overrides", "rates must be >= 0");
  if (!(money.fee_mean >= 0.0)) invalid("money.fee_mean", "must be >= 0");
  if (!(money.fee_var >= 0.0)) invalid("money.fee_var", "must be >= 0");
}

namespace {

ScenarioSpec baseline(std::string name, double direct_bb_mean) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.pair_stats = {
      {PairChannel::Direct, Sector::F, Sector::F, 1.0, 1.0, 0.0},
      {PairChannel::Direct, Sector::B, Sector::B, direct_bb_mean, 0.5, 0.0},
      {PairChannel::Unhedged, Sector::B, Sector::F, 1.0, 0.5, 0.0},
  };
  return s;
}

PairExposureStats& unhedged_bf(ScenarioSpec& s) {
  for (auto& p : s.pair_stats)
    if (p.channel == PairChannel::Unhedged && p.from == Sector::B && p.to == Sector::F) return p;
  throw DomainError("scenario '" + s.name + "' has no unhedged B->F channel");
}

void add_triple(ScenarioSpec& s, TripleExposureStats t) {
  for (auto& q : s.triple_stats) {
    if (q.kind == t.kind && q.buyer == t.buyer && q.reference == t.reference &&
        q.seller == t.seller) {
      q.mean += t.mean;
      q.sd += t.sd;
      return;
    }
  }
  s.triple_stats.push_back(t);
}

ScenarioSpec named(ScenarioSpec s, std::string name) {
  s.name = std::move(name);
  return s;
}

ScenarioSpec with_triples(std::string name, double direct_bb_mean, PairExposureStats unhedged,
                          std::vector<TripleExposureStats> triples) {
  auto s = baseline(std::move(name), direct_bb_mean);
  unhedged_bf(s) = unhedged;
  s.triple_stats = std::move(triples);
  return s;
}

constexpr PairExposureStats kNoLending{PairChannel::Unhedged, Sector::B, Sector::F, 0.0, 0.0, 0.0};
constexpr PairExposureStats kBaseLending{PairChannel::Unhedged, Sector::B, Sector::F, 1.0, 0.5,
                                         0.0};

TripleExposureStats hedge(Sector seller, double mean, double sd) {
  return {CdsKind::Hedge, Sector::B, Sector::F, seller, mean, sd};
}

TripleExposureStats speculative(Sector seller, double mean, double sd) {
  return {CdsKind::Speculative, Sector::B, Sector::F, seller, mean, sd};
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{
      "S0", "S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8",
      "S9", "S10", "S11", "S12", "S~0", "S~9", "S~10"};
  return names;
}

std::optional<std::string> canonical_scenario_name(std::string_view name) {
  std::string n(name);
  // "S̃N" (combining tilde) and "StN" are aliases of "S~N".
  const std::string combining_tilde = "S\xCC\x83";
  if (n.rfind(combining_tilde, 0) == 0) n = "S~" + n.substr(combining_tilde.size());
  else if (n.size() > 2 && (n[0] == 'S' || n[0] == 's') && (n[1] == 't' || n[1] == 'T'))
    n = "S~" + n.substr(2);
  if (!n.empty() && n[0] == 's') n[0] = 'S';
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), n) != names.end()) return n;
  return std::nullopt;
}

ScenarioSpec builtin_scenario(std::string_view requested) {
  const auto canonical = canonical_scenario_name(requested);
  if (!canonical) throw NotFound("unknown scenario '" + std::string(requested) + "'");
  const std::string& name = *canonical;

  const auto s0 = baseline("S0", 0.0);
  if (name == "S0") return s0;
  if (name == "S1") {
    auto s = baseline(name, 0.0);
    unhedged_bf(s) = {PairChannel::Unhedged, Sector::B, Sector::F, 2.0, 1.0, 0.0};
    return s;
  }
  if (name == "S2") {
    auto s = baseline(name, 0.0);
    s.pair_stats.push_back({PairChannel::Unhedged, Sector::B, Sector::B, 1.0, 0.5, 0.0});
    return s;
  }
  if (name == "S3") return named(hedge_sweep(s0, 1.0 / 3.0, Sector::B), name);
  if (name == "S4") return named(hedge_sweep(s0, 2.0 / 3.0, Sector::B), name);
  if (name == "S5") return named(hedge_sweep(s0, 1.0 / 3.0, Sector::I), name);
  if (name == "S6") return named(hedge_sweep(s0, 2.0 / 3.0, Sector::I), name);
  if (name == "S7")
    return with_triples(name, 0.0, kNoLending,
                        {hedge(Sector::B, 0.5, 0.25), hedge(Sector::I, 1.5, 0.75)});
  if (name == "S8")
    return with_triples(name, 0.0, kNoLending,
                        {hedge(Sector::B, 0.5, 0.25), hedge(Sector::I, 2.5, 1.25)});
  if (name == "S9")
    return with_triples(name, 0.0, kBaseLending, {speculative(Sector::B, 1.0, 0.5)});
  if (name == "S10")
    return with_triples(name, 0.0, kBaseLending, {speculative(Sector::B, 2.0, 1.0)});
  if (name == "S11")
    return with_triples(name, 0.0, kBaseLending,
                        {speculative(Sector::B, 0.25, 0.125), speculative(Sector::I, 0.25, 0.125)});
  if (name == "S12")
    return with_triples(name, 0.0, kBaseLending,
                        {speculative(Sector::B, 0.5, 0.25), speculative(Sector::I, 0.5, 0.25)});
  if (name == "S~0") return baseline(name, 0.25);
  if (name == "S~9")
    return with_triples(name, 0.25, kBaseLending, {speculative(Sector::B, 1.0, 0.5)});
  // S~10
  return with_triples(name, 0.25, kBaseLending, {speculative(Sector::B, 2.0, 1.0)});
}

namespace {

std::string sweep_name(const ScenarioSpec& base, const char* what, double x, Sector seller) {
  std::ostringstream os;
  os << base.name << "+" << what << "(" << x << "," << to_string(seller) << ")";
  return os.str();
}

}  // namespace

ScenarioSpec hedge_sweep(const ScenarioSpec& base, double f_h, Sector seller) {
  if (!(f_h >= 0.0 && f_h <= 1.0)) throw DomainError("hedge_sweep: f_h must lie in [0,1]");
  if (seller == Sector::F) throw DomainError("hedge_sweep: firms do not sell protection");
  ScenarioSpec out = base;
  auto& loan = unhedged_bf(out);
  const double mean = loan.mean;
  const double sd = loan.sd;
  if (f_h == 0.0) return out;
  loan.mean = (1.0 - f_h) * mean;
  loan.sd = (1.0 - f_h) * sd;
  add_triple(out, hedge(seller, f_h * mean, f_h * sd));
  out.name = sweep_name(base, "hedge", f_h, seller);
  return out;
}

ScenarioSpec speculative_sweep(const ScenarioSpec& base, double volume, Sector seller) {
  if (!(volume >= 0.0)) throw DomainError("speculative_sweep: volume must be >= 0");
  if (seller == Sector::F) throw DomainError("speculative_sweep: firms do not sell protection");
  ScenarioSpec out = base;
  const auto& loan = unhedged_bf(out);
  if (volume == 0.0) return out;
  add_triple(out, speculative(seller, volume * loan.mean, volume * loan.sd));
  out.name = sweep_name(base, "speculative", volume, seller);
  return out;
}

}  // namespace cdsnet
