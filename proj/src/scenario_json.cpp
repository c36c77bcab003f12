#include <initializer_list>
#include <string>

#include "cdsnet/errors.hpp"
#include "cdsnet/scenario.hpp"
#include "json.hpp"

namespace cdsnet {

using nlohmann::json;

namespace {

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  return j;
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw ParseError(at(path, it.key()), "unknown field");
  }
}

const json* field(const json& j, const std::string& path, const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) throw ParseError(at(path, key), "missing required field");
    return nullptr;
  }
  return &*it;
}

double number(const json& j, const std::string& path, const char* key, double fallback,
              bool required = false) {
  const json* v = field(j, path, key, required);
  if (!v) return fallback;
  if (!v->is_number()) throw ParseError(at(path, key), "expected a number");
  return v->get<double>();
}

int integer(const json& j, const std::string& path, const char* key, int fallback) {
  const json* v = field(j, path, key, false);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ParseError(at(path, key), "expected an integer");
  return v->get<int>();
}

std::string text(const json& j, const std::string& path, const char* key, const char* fallback,
                 bool required = false) {
  const json* v = field(j, path, key, required);
  if (!v) return fallback;
  if (!v->is_string()) throw ParseError(at(path, key), "expected a string");
  return v->get<std::string>();
}

Sector sector(const json& j, const std::string& path, const char* key) {
  const auto s = text(j, path, key, "", true);
  try {
    return parse_sector(s);
  } catch (const ParseError& e) {
    throw ParseError(at(path, key), e.what());
  }
}

PairChannel pair_channel(const std::string& s, const std::string& path) {
  if (s == "d") return PairChannel::Direct;
  if (s == "u") return PairChannel::Unhedged;
  throw ParseError(path, "unknown channel '" + s + "' (expected d or u)");
}

CdsKind cds_kind(const std::string& s, const std::string& path) {
  if (s == "hedge") return CdsKind::Hedge;
  if (s == "speculative") return CdsKind::Speculative;
  throw ParseError(path, "unknown kind '" + s + "' (expected hedge or speculative)");
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

PairExposureStats parse_pair(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"channel", "from", "to", "mean", "sd", "kappa"});
  PairExposureStats p;
  p.channel = pair_channel(text(j, path, "channel", "", true), at(path, "channel"));
  p.from = sector(j, path, "from");
  p.to = sector(j, path, "to");
  p.mean = number(j, path, "mean", 0.0, true);
  p.sd = number(j, path, "sd", 0.0, true);
  p.kappa = number(j, path, "kappa", 0.0);
  return p;
}

TripleExposureStats parse_triple(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"kind", "buyer", "reference", "seller", "mean", "sd"});
  TripleExposureStats t;
  t.kind = cds_kind(text(j, path, "kind", "", true), at(path, "kind"));
  t.buyer = sector(j, path, "buyer");
  t.reference = sector(j, path, "reference");
  t.seller = sector(j, path, "seller");
  t.mean = number(j, path, "mean", 0.0, true);
  t.sd = number(j, path, "sd", 0.0, true);
  return t;
}

NoiseSpec parse_noise(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"sigma", "xi0_policy", "rho_rule"});
  NoiseSpec n;
  n.sigma = number(j, path, "sigma", n.sigma);
  if (text(j, path, "xi0_policy", "constant") != "constant")
    throw ParseError(at(path, "xi0_policy"), "only 'constant' is supported");
  if (text(j, path, "rho_rule", "basel2") != "basel2")
    throw ParseError(at(path, "rho_rule"), "only 'basel2' is supported");
  return n;
}

HeterogeneitySpec parse_heterogeneity(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"theta_mean", "theta_sd", "quadrature_nodes"});
  HeterogeneitySpec h;
  if (const json* tm = field(j, path, "theta_mean", false)) {
    const auto tpath = at(path, "theta_mean");
    require_object(*tm, tpath);
    reject_unknown(*tm, tpath, {"F", "B", "I"});
    for (Sector s : kSectors) {
      const std::string key(to_string(s));
      h.theta_mean[index(s)] = number(*tm, tpath, key.c_str(), h.theta_mean[index(s)]);
    }
  }
  h.theta_sd = number(j, path, "theta_sd", h.theta_sd);
  h.quadrature_nodes = integer(j, path, "quadrature_nodes", h.quadrature_nodes);
  return h;
}

MoneyStreamSpec parse_money(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"monthly_interest", "interest_overrides", "fee_mean", "fee_var"});
  MoneyStreamSpec m;
  m.monthly_interest = number(j, path, "monthly_interest", m.monthly_interest);
  m.fee_mean = number(j, path, "fee_mean", m.fee_mean);
  m.fee_var = number(j, path, "fee_var", m.fee_var);
  if (const json* ov = field(j, path, "interest_overrides", false)) {
    const auto opath = at(path, "interest_overrides");
    array(*ov, opath);
    for (std::size_t i = 0; i < ov->size(); ++i) {
      const auto ipath = at(opath, i);
      const json& o = require_object((*ov)[i], ipath);
      reject_unknown(o, ipath, {"lender", "borrower", "rate"});
      m.overrides.push_back(
          {sector(o, ipath, "lender"), sector(o, ipath, "borrower"), number(o, ipath, "rate", 0.0, true)});
    }
  }
  return m;
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  const std::string path;
  require_object(root, path);
  reject_unknown(root, path,
                 {"name", "pair_stats", "triple_stats", "noise", "heterogeneity", "money",
                  "horizon"});

  ScenarioSpec spec;
  spec.name = text(root, path, "name", "", true);
  if (const json* ps = field(root, path, "pair_stats", false)) {
    array(*ps, "pair_stats");
    for (std::size_t i = 0; i < ps->size(); ++i)
      spec.pair_stats.push_back(parse_pair((*ps)[i], at("pair_stats", i)));
  }
  if (const json* ts = field(root, path, "triple_stats", false)) {
    array(*ts, "triple_stats");
    for (std::size_t i = 0; i < ts->size(); ++i)
      spec.triple_stats.push_back(parse_triple((*ts)[i], at("triple_stats", i)));
  }
  if (const json* n = field(root, path, "noise", false)) spec.noise = parse_noise(*n, "noise");
  if (const json* h = field(root, path, "heterogeneity", false))
    spec.heterogeneity = parse_heterogeneity(*h, "heterogeneity");
  if (const json* m = field(root, path, "money", false)) spec.money = parse_money(*m, "money");
  spec.horizon = integer(root, path, "horizon", spec.horizon);

  spec.validate();
  return spec;
}

std::string serialize_scenario(const ScenarioSpec& spec) {
  json root;
  root["name"] = spec.name;
  root["pair_stats"] = json::array();
  for (const auto& p : spec.pair_stats) {
    root["pair_stats"].push_back({{"channel", to_string(p.channel)},
                                  {"from", to_string(p.from)},
                                  {"to", to_string(p.to)},
                                  {"mean", p.mean},
                                  {"sd", p.sd},
                                  {"kappa", p.kappa}});
  }
  root["triple_stats"] = json::array();
  for (const auto& t : spec.triple_stats) {
    root["triple_stats"].push_back({{"kind", to_string(t.kind)},
                                    {"buyer", to_string(t.buyer)},
                                    {"reference", to_string(t.reference)},
                                    {"seller", to_string(t.seller)},
                                    {"mean", t.mean},
                                    {"sd", t.sd}});
  }
  root["noise"] = {{"sigma", spec.noise.sigma}, {"xi0_policy", "constant"}, {"rho_rule", "basel2"}};
  json theta;
  for (Sector s : kSectors) theta[std::string(to_string(s))] = spec.heterogeneity.theta_mean[index(s)];
  root["heterogeneity"] = {{"theta_mean", theta},
                           {"theta_sd", spec.heterogeneity.theta_sd},
                           {"quadrature_nodes", spec.heterogeneity.quadrature_nodes}};
  json overrides = json::array();
  for (const auto& o : spec.money.overrides)
    overrides.push_back({{"lender", to_string(o.lender)}, {"borrower", to_string(o.borrower)}, {"rate", o.rate}});
  root["money"] = {{"monthly_interest", spec.money.monthly_interest},
                   {"interest_overrides", overrides},
                   {"fee_mean", spec.money.fee_mean},
                   {"fee_var", spec.money.fee_var}};
  root["horizon"] = spec.horizon;
  return root.dump(2);
}

}  // namespace cdsnet
