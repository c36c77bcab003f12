#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdsnet/errors.hpp"
#include "cdsnet/macro_engine.hpp"
#include "cdsnet/micro_oracle.hpp"
#include "cdsnet/risk_metrics.hpp"
#include "cdsnet/scenario.hpp"

namespace fs = std::filesystem;
using namespace cdsnet;

namespace {

constexpr int kValidationFailed = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioSpec load(const std::string& name, const std::string& config) {
  if (!config.empty()) return parse_scenario(read_file(config));
  return builtin_scenario(name);
}

// "S~0" stays readable, sweep names like "S0+hedge(0.5,B)" become "S0_hedge_0.5_B_"
std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '~' || c == '.' || c == '-';
    out += keep ? c : '_';
  }
  return out;
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << std::setprecision(12);
  return out;
}

void write_density(const fs::path& path, const DensityTable& d) {
  auto out = open_csv(path);
  out << "bin_center,density\n";
  for (std::size_t b = 0; b < d.center.size(); ++b) out << d.center[b] << ',' << d.density[b] << '\n';
}

struct RunArgs {
  std::string scenario = "S0";
  std::string config;
  int xi0_points = 2001;
  int bins = 400;
  std::string out = ".";
};

int cmd_run(const RunArgs& a) {
  const ScenarioSpec spec = load(a.scenario, a.config);
  const RiskReport r = sweep(spec, Xi0Grid::standard(a.xi0_points));
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const std::string stem = file_stem(spec.name);
  {
    auto out = open_csv(dir / (stem + "_sweep.csv"));
    out << "xi0,L,m\n";
    for (std::size_t k = 0; k < r.size(); ++k) out << r.xi0[k] << ',' << r.loss[k] << ',' << r.m[k] << '\n';
  }
  write_density(dir / (stem + "_density_L.csv"), density(r, Variable::Loss, a.bins));
  write_density(dir / (stem + "_density_m.csv"), density(r, Variable::DefaultFraction, a.bins));
  std::cout << std::setprecision(6) << "scenario " << spec.name << "\n"
            << "  <m>     " << mean(r, Variable::DefaultFraction) << "\n"
            << "  <L>     " << mean(r, Variable::Loss) << "\n"
            << "  FaR_99  " << far(r, 0.99) << "\n"
            << "  VaR_99  " << value_at_risk(r, 0.99) << "\n"
            << "  wrote   " << (dir / (stem + "_*.csv")).string() << "\n";
  return 0;
}

struct HedgeArgs {
  std::string scenario = "S0";
  double from = 0.0;
  double to = 1.0;
  int steps = 10;
  std::string seller = "B";
  int xi0_points = 2001;
  std::string out = ".";
};

int cmd_sweep_hedge(const HedgeArgs& a) {
  if (a.steps < 1) throw DomainError("--steps must be >= 1");
  const ScenarioSpec base = builtin_scenario(a.scenario);
  const Sector seller = parse_sector(a.seller);
  std::vector<double> fractions;
  for (int k = 0; k <= a.steps; ++k) fractions.push_back(a.from + (a.to - a.from) * k / a.steps);
  const auto rows = hedge_curve(base, seller, fractions, Xi0Grid::standard(a.xi0_points));
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const fs::path path = dir / (file_stem(base.name) + "_hedge_" + a.seller + ".csv");
  auto out = open_csv(path);
  out << "f_h,mean_m,far_99,var_99\n";
  std::cout << std::setprecision(6) << std::fixed;
  std::cout << "     f_h      <m>   FaR_99   VaR_99\n";
  for (const auto& r : rows) {
    out << r.f_h << ',' << r.mean_m << ',' << r.far_99 << ',' << r.var_99 << '\n';
    std::cout << std::setw(8) << r.f_h << ' ' << std::setw(8) << r.mean_m << ' ' << std::setw(8)
              << r.far_99 << ' ' << std::setw(8) << r.var_99 << '\n';
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

struct ValidateArgs {
  std::string scenario = "S0";
  std::string config;
  int nodes = 20000;
  int replicas = 64;
  std::uint64_t seed = 1;
  double connectivity = 32.0;
  std::vector<double> xi0{-2.0, 0.0, 2.0};
  double sigmas = 4.0;
  bool redraw = false;
  std::string dump;
};

int cmd_validate(const ValidateArgs& a) {
  const ScenarioSpec spec = load(a.scenario, a.config);
  MicroConfig cfg;
  cfg.sizes = {a.nodes, std::max(1, a.nodes / 10), std::max(1, a.nodes / 10)};
  cfg.connectivity = a.connectivity;
  cfg.seed = a.seed;
  const QuadGrid grid = build_grid(spec.heterogeneity, spec.noise);

  std::cout << "scenario " << spec.name << "  N=(" << cfg.sizes[0] << "," << cfg.sizes[1] << ","
            << cfg.sizes[2] << ")  C=" << cfg.connectivity << "  replicas=" << a.replicas
            << (a.redraw ? "  exposures redrawn monthly" : "") << "\n";
  std::cout << std::setprecision(5) << std::fixed;
  bool ok = true;
  for (double xi : a.xi0) {
    const MacroTrajectory tr = run_trajectory(spec, grid, xi);
    const MicroEstimate est = estimate_macro(spec, cfg, xi, a.replicas, a.redraw);
    const auto b = index(Sector::B);
    const double m_macro = tr.default_fraction(Sector::B), m_micro = est.m[b].back();
    const double l_macro = tr.loss_per_node(Sector::B), l_micro = est.loss[b].back();
    const double m_z = std::abs(m_micro - m_macro) / std::max(est.m_se[b].back(), 1e-300);
    const double l_z = std::abs(l_micro - l_macro) / std::max(est.loss_se[b].back(), 1e-300);
    const bool pass = m_z < a.sigmas && l_z < a.sigmas;
    ok = ok && pass;
    std::cout << "xi0=" << std::setw(8) << xi << "  m_B " << m_macro << " vs " << m_micro << " +- "
              << est.m_se[b].back() << " (" << std::setprecision(1) << m_z << " se)"
              << std::setprecision(5) << "  L_B " << l_macro << " vs " << l_micro << " +- "
              << est.loss_se[b].back() << " (" << std::setprecision(1) << l_z << " se)"
              << std::setprecision(5) << "  " << (pass ? "ok" : "MISMATCH") << "\n";
  }
  if (!a.dump.empty()) {
    const MicroWorld world = sample_world(spec, cfg);
    SimulationOptions opt;
    opt.seed = cfg.seed;
    opt.redraw_exposures = a.redraw;
    const MicroState st = simulate_path(world, a.xi0.front(), opt);
    std::ofstream out(a.dump);
    if (!out) throw Error("cannot write " + a.dump);
    write_dump(out, world, st);
    std::cout << "wrote " << a.dump << "\n";
  }
  return ok ? 0 : kValidationFailed;
}

int cmd_catalog() {
  for (const auto& name : builtin_names()) {
    const ScenarioSpec s = builtin_scenario(name);
    std::cout << std::left << std::setw(5) << name << std::right;
    for (const auto& p : s.pair_stats)
      std::cout << "  " << to_string(p.channel) << " " << to_string(p.from) << to_string(p.to) << "=("
                << p.mean << "," << p.sd << ")";
    for (const auto& t : s.triple_stats)
      std::cout << "  " << (t.kind == CdsKind::Hedge ? "h " : "s ") << to_string(t.buyer)
                << to_string(t.reference) << to_string(t.seller) << "=(" << t.mean << "," << t.sd << ")";
    std::cout << "\n";
  }
  return 0;
}

int cmd_export(const std::string& name, const std::string& out) {
  const std::string doc = serialize_scenario(builtin_scenario(name)) + "\n";
  if (out.empty()) {
    std::cout << doc;
  } else {
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out);
    f << doc;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Credit contagion with CDS: macroscopic solver and micro Monte Carlo oracle"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "sweep xi0 for one scenario, write CSVs");
  auto* scen_opt = run_cmd->add_option("--scenario", run.scenario, "built-in scenario name");
  run_cmd->add_option("--config", run.config, "scenario JSON file")->excludes(scen_opt);
  run_cmd->add_option("--xi0-points", run.xi0_points, "xi0 grid size")->check(CLI::PositiveNumber);
  run_cmd->add_option("--bins", run.bins, "density bins")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run.out, "output directory");

  HedgeArgs hedge;
  auto* hedge_cmd = app.add_subcommand("sweep-hedge", "hedge fraction sweep of the B->F book");
  hedge_cmd->add_option("--scenario", hedge.scenario, "base scenario");
  hedge_cmd->add_option("--from", hedge.from, "first f_h");
  hedge_cmd->add_option("--to", hedge.to, "last f_h");
  hedge_cmd->add_option("--steps", hedge.steps, "number of intervals");
  hedge_cmd->add_option("--seller", hedge.seller, "protection seller sector")->check(CLI::IsMember({"B", "I"}));
  hedge_cmd->add_option("--xi0-points", hedge.xi0_points, "xi0 grid size")->check(CLI::PositiveNumber);
  hedge_cmd->add_option("--out", hedge.out, "output directory");

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "compare macro solver with the micro oracle");
  auto* vscen = val_cmd->add_option("--scenario", val.scenario, "built-in scenario name");
  val_cmd->add_option("--config", val.config, "scenario JSON file")->excludes(vscen);
  val_cmd->add_option("--nodes", val.nodes, "number of firms; banks and insurers get a tenth each")
      ->check(CLI::PositiveNumber);
  val_cmd->add_option("--replicas", val.replicas, "independent network samples")->check(CLI::PositiveNumber);
  val_cmd->add_option("--seed", val.seed, "base seed");
  val_cmd->add_option("--connectivity", val.connectivity, "mean connectivity C");
  val_cmd->add_option("--xi0", val.xi0, "macro-factor values")->delimiter(',');
  val_cmd->add_option("--sigmas", val.sigmas, "tolerance in standard errors");
  val_cmd->add_flag("--redraw-exposures", val.redraw, "redraw exposure noise every month");
  val_cmd->add_option("--dump", val.dump, "write one sampled world and path to this file");

  app.add_subcommand("catalog", "list built-in scenarios");

  std::string export_name = "S0", export_out;
  auto* exp_cmd = app.add_subcommand("export", "print a built-in scenario as JSON");
  exp_cmd->add_option("--scenario", export_name, "built-in scenario name");
  exp_cmd->add_option("--out", export_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*hedge_cmd) return cmd_sweep_hedge(hedge);
    if (*val_cmd) return cmd_validate(val);
    if (*exp_cmd) return cmd_export(export_name, export_out);
    return cmd_catalog();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
