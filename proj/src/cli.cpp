#include "polariton/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "polariton/meanfield.hpp"
#include "polariton/thermo.hpp"

namespace polariton::cli {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const char* to_string(FreeEnergyForm f) {
  return f == FreeEnergyForm::consistent ? "consistent" : "printed";
}
const char* to_string(ChannelMapping m) {
  return m == ChannelMapping::sym_ant ? "sym_ant" : "literal_ab";
}

FreeEnergyForm parse_form(const std::string& s) {
  if (s == "consistent") return FreeEnergyForm::consistent;
  if (s == "printed") return FreeEnergyForm::printed;
  throw std::invalid_argument("unknown free_energy form '" + s + "'");
}
ChannelMapping parse_channels(const std::string& s) {
  if (s == "sym_ant") return ChannelMapping::sym_ant;
  if (s == "literal_ab") return ChannelMapping::literal_ab;
  throw std::invalid_argument("unknown channel mapping '" + s + "'");
}

// Reads each key of obj through a handler; unknown keys are errors.
void for_each_key(const json& obj, const std::string& where,
                  const std::map<std::string, std::function<void(const json&)>>& handlers) {
  if (!obj.is_object()) throw std::invalid_argument("'" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    const auto it = handlers.find(key);
    if (it == handlers.end()) throw std::invalid_argument("unknown key '" + where + "." + key + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw std::invalid_argument("bad value for '" + where + "." + key + "': " + e.what());
    }
  }
}

ojson axis_json(const Axis& a) {
  return {{"param", a.param}, {"min", a.min}, {"max", a.max}, {"count", a.count}};
}

Axis axis_from_json(const json& j, Axis a, const std::string& where) {
  for_each_key(j, where, {
                             {"param", [&](const json& v) { a.param = v.get<std::string>(); }},
                             {"min", [&](const json& v) { a.min = v.get<double>(); }},
                             {"max", [&](const json& v) { a.max = v.get<double>(); }},
                             {"count", [&](const json& v) { a.count = v.get<int>(); }},
                         });
  return a;
}

ojson branch_json(const SolutionBranch& b, const ModelParams& p, const SolverConfig& cfg) {
  ThermoOptions printed = cfg.thermo();
  printed.form = FreeEnergyForm::printed;
  const FreeEnergyBreakdown fp = free_energy(p, b.state, printed);
  return {
      {"psi_a", b.state.psi_a},
      {"psi_b", b.state.psi_b},
      {"j_a", b.state.j_a},
      {"j_b", b.state.j_b},
      {"phase", to_string(classify(b, p, cfg))},
      {"free_energy",
       {{"form", to_string(cfg.free_energy)},
        {"atomic", b.free_energy.f_atomic},
        {"photonic", b.free_energy.f_photonic},
        {"double_count", b.free_energy.double_count},
        {"total", b.free_energy.total}}},
      {"free_energy_printed_total", fp.total},
      {"stationarity_residual",
       stationarity_residual(p, b.state.temperature, b.state.psi_a, b.state.psi_b, cfg.thermo())},
      {"converged", b.converged},
      {"marginal", b.marginal},
      {"iterations", b.iterations},
      {"residual", b.residual},
      {"seed_index", b.seed_index},
  };
}

void emit(const ojson& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << doc.dump(2) << '\n';
}

template <class Writer>
void emit_table(const RunConfig& cfg, const std::string& command, Writer&& writer,
                std::ostream& out, std::ostream& err) {
  const ojson meta = metadata(cfg, command);
  if (cfg.out.empty()) {
    writer(out);
    err << meta.dump(2) << '\n';
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + cfg.out + "'");
  writer(f);
  std::ofstream m(cfg.out + ".meta.json");
  m << meta.dump(2) << '\n';
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Couplings& c = cfg.model;
  const StabilityReport s = check_stability(c, cfg.solver.bz_grid, cfg.model_options);
  ojson doc = metadata(cfg, "check");
  doc["stable"] = s.stable;
  doc["margin"] = s.analytic_margin;
  doc["min_branch_energy"] = s.minimum;
  doc["grid_minimum"] = s.grid_minimum;
  doc["omega_sym0"] = omega_sym({0.0, 0.0}, c);
  doc["omega_ant0"] = omega_ant({0.0, 0.0}, c);

  int code = kOk;
  try {
    const ModelParams p(c, cfg.model_options);
    const double omega_plus = 1.0 / p.omega_plus_inv();
    doc["omega_plus_inv"] = p.omega_plus_inv();
    doc["omega_minus_inv"] = p.omega_minus_inv();
    doc["g_a_c0"] = analytic::zeroth_order_gc(c.eps_a, omega_plus);
    doc["g_b_c0"] = analytic::zeroth_order_gc(c.eps_b, omega_plus);
    doc["single_species_gc_a"] = analytic::single_species_gc(c.eps_a, p.omega_sym0(), cfg.convention);
    doc["single_species_gc_b"] = analytic::single_species_gc(c.eps_b, p.omega_sym0(), cfg.convention);
    doc["spectral_radius_t0"] = trivial_gain(p, 0.0);
  } catch (const InvalidModel& e) {
    doc["error"] = e.what();
    code = kConfigError;
  }
  emit(doc, cfg.out, out);
  return code;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p(cfg.model, cfg.model_options);
  const auto branches = solve_all(p, cfg.temperature, cfg.solver);
  ojson doc = metadata(cfg, "solve");
  doc["temperature"] = cfg.temperature;
  doc["spectral_radius"] = trivial_gain(p, cfg.temperature);
  doc["equilibrium"] = branch_json(branches.front(), p, cfg.solver);
  ojson all = ojson::array();
  for (const auto& b : branches) all.push_back(branch_json(b, p, cfg.solver));
  doc["branches"] = std::move(all);
  emit(doc, cfg.out, out);
  return kOk;
}

int cmd_tc(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p(cfg.model, cfg.model_options);
  const Couplings& c = cfg.model;
  ojson doc = metadata(cfg, "tc");
  const auto tc = critical_temperature(p, cfg.solver);
  doc["critical_temperature"] = tc ? ojson(*tc) : ojson(nullptr);
  doc["spectral_radius_t0"] = trivial_gain(p, 0.0);
  auto ref = [&](double g, double eps) {
    const auto t = analytic::single_species_tc(g, eps, p.omega_sym0(), cfg.convention);
    return t ? ojson(*t) : ojson(nullptr);
  };
  doc["single_species_tc_a"] = ref(c.g_a, c.eps_a);
  doc["single_species_tc_b"] = ref(c.g_b, c.eps_b);
  emit(doc, cfg.out, out);
  return kOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PhaseDiagram d = scan(cfg.model, cfg.model_options, cfg.scan_x, cfg.scan_y,
                              cfg.temperature, cfg.solver, cfg.threads);
  emit_table(cfg, "scan", [&](std::ostream& os) { write_scan_csv(d, os); }, out, err);
  const bool any_ok = std::any_of(d.cells.begin(), d.cells.end(), [](const auto& c) { return c.ok; });
  return any_ok ? kOk : kNonConvergence;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p(cfg.model, cfg.model_options);
  const auto temps = linspace(cfg.sweep.t_min, cfg.sweep.t_max, cfg.sweep.count);
  const auto points = temperature_sweep(p, temps, cfg.solver);
  emit_table(cfg, "sweep", [&](std::ostream& os) { write_sweep_csv(points, os); }, out, err);
  const bool any_ok = std::any_of(points.begin(), points.end(), [](const auto& pt) { return pt.ok; });
  return any_ok ? kOk : kNonConvergence;
}

}  // namespace

ojson to_json(const RunConfig& cfg) {
  const Couplings& m = cfg.model;
  const SolverConfig& s = cfg.solver;
  ojson seeds = ojson::array();
  for (const Seed& seed : s.initial_guesses) seeds.push_back({seed.psi_a, seed.psi_b});
  return {
      {"model",
       {{"omega", m.omega},
        {"mu", m.mu},
        {"eps_a", m.eps_a},
        {"eps_b", m.eps_b},
        {"g_a", m.g_a},
        {"g_b", m.g_b},
        {"kappa", m.kappa},
        {"kappa_prime", m.kappa_prime}}},
      {"model_options",
       {{"allow_negative_hopping", cfg.model_options.allow_negative_hopping},
        {"stability_margin", cfg.model_options.stability_margin}}},
      {"solver",
       {{"damping", s.damping},
        {"tol", s.tol},
        {"max_iter", s.max_iter},
        {"zero_threshold", s.zero_threshold},
        {"initial_guesses", seeds},
        {"bz_grid", s.bz_grid},
        {"free_energy", to_string(s.free_energy)},
        {"channels", to_string(s.channels)}}},
      {"temperature", cfg.temperature},
      {"convention", analytic::to_string(cfg.convention)},
      {"threads", cfg.threads},
      {"scan", {{"x", axis_json(cfg.scan_x)}, {"y", axis_json(cfg.scan_y)}}},
      {"sweep", {{"t_min", cfg.sweep.t_min}, {"t_max", cfg.sweep.t_max}, {"count", cfg.sweep.count}}},
      {"out", cfg.out},
  };
}

RunConfig config_from_json(const json& j, RunConfig base) {
  RunConfig& c = base;
  auto num = [](double& dst) { return [&dst](const json& v) { dst = v.get<double>(); }; };
  for_each_key(
      j, "config",
      {
          {"model",
           [&](const json& v) {
             for_each_key(v, "model",
                          {{"omega", num(c.model.omega)},
                           {"mu", num(c.model.mu)},
                           {"eps_a", num(c.model.eps_a)},
                           {"eps_b", num(c.model.eps_b)},
                           {"g_a", num(c.model.g_a)},
                           {"g_b", num(c.model.g_b)},
                           {"kappa", num(c.model.kappa)},
                           {"kappa_prime", num(c.model.kappa_prime)}});
           }},
          {"model_options",
           [&](const json& v) {
             for_each_key(v, "model_options",
                          {{"allow_negative_hopping",
                            [&](const json& x) { c.model_options.allow_negative_hopping = x.get<bool>(); }},
                           {"stability_margin", num(c.model_options.stability_margin)}});
           }},
          {"solver",
           [&](const json& v) {
             SolverConfig& s = c.solver;
             for_each_key(
                 v, "solver",
                 {{"damping", num(s.damping)},
                  {"tol", num(s.tol)},
                  {"max_iter", [&](const json& x) { s.max_iter = x.get<long>(); }},
                  {"zero_threshold", num(s.zero_threshold)},
                  {"initial_guesses",
                   [&](const json& x) {
                     s.initial_guesses.clear();
                     for (const auto& pair : x) {
                       if (!pair.is_array() || pair.size() != 2) {
                         throw std::invalid_argument("initial_guesses entries must be [psi_a, psi_b]");
                       }
                       s.initial_guesses.push_back({pair[0].get<double>(), pair[1].get<double>()});
                     }
                   }},
                  {"bz_grid", [&](const json& x) { s.bz_grid = x.get<int>(); }},
                  {"free_energy", [&](const json& x) { s.free_energy = parse_form(x.get<std::string>()); }},
                  {"channels", [&](const json& x) { s.channels = parse_channels(x.get<std::string>()); }}});
           }},
          {"temperature", num(c.temperature)},
          {"convention",
           [&](const json& v) { c.convention = analytic::parse_convention(v.get<std::string>()); }},
          {"threads", [&](const json& v) { c.threads = v.get<int>(); }},
          {"scan",
           [&](const json& v) {
             for_each_key(v, "scan",
                          {{"x", [&](const json& x) { c.scan_x = axis_from_json(x, c.scan_x, "scan.x"); }},
                           {"y", [&](const json& x) { c.scan_y = axis_from_json(x, c.scan_y, "scan.y"); }}});
           }},
          {"sweep",
           [&](const json& v) {
             for_each_key(v, "sweep",
                          {{"t_min", num(c.sweep.t_min)},
                           {"t_max", num(c.sweep.t_max)},
                           {"count", [&](const json& x) { c.sweep.count = x.get<int>(); }}});
           }},
          {"out", [&](const json& v) { c.out = v.get<std::string>(); }},
      });
  return c;
}

std::vector<Seed> parse_seed_battery(const std::string& list) {
  std::vector<Seed> seeds;
  std::stringstream all(list);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("seed '" + item + "' is not 'a,b'");
    try {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      const std::string sa = item.substr(0, comma);
      const std::string sb = item.substr(comma + 1);
      const double a = std::stod(sa, &used_a);
      const double b = std::stod(sb, &used_b);
      if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument(item);
      seeds.push_back({a, b});
    } catch (const std::exception&) {
      throw std::invalid_argument("seed '" + item + "' is not 'a,b'");
    }
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed battery");
  return seeds;
}

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

void write_scan_csv(const PhaseDiagram& d, std::ostream& os) {
  os << "axis1,axis2,psi_a,psi_b,j_a,j_b,free_energy,phase,converged\n";
  for (const PhaseCell& c : d.cells) {
    os << format_number(c.x) << ',' << format_number(c.y) << ',';
    if (!c.ok) {
      os << "nan,nan,nan,nan,nan,ERROR,0\n";
      continue;
    }
    os << format_number(c.state.psi_a) << ',' << format_number(c.state.psi_b) << ','
       << format_number(c.state.j_a) << ',' << format_number(c.state.j_b) << ','
       << format_number(c.free_energy) << ',' << to_string(c.label) << ','
       << (c.converged ? 1 : 0) << '\n';
  }
}

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& os) {
  os << "T,psi_a,psi_b,j_a,j_b,phase\n";
  for (const SweepPoint& pt : points) {
    os << format_number(pt.temperature) << ',';
    if (!pt.ok) {
      os << "nan,nan,nan,nan,ERROR\n";
      continue;
    }
    const OrderState& s = pt.branch.state;
    os << format_number(s.psi_a) << ',' << format_number(s.psi_b) << ',' << format_number(s.j_a)
       << ',' << format_number(s.j_b) << ',' << to_string(pt.label) << '\n';
  }
}

ojson metadata(const RunConfig& cfg, const std::string& command) {
  return {{"command", command},
          {"version", kVersion},
          {"convention", analytic::to_string(cfg.convention)},
          {"temperature_units", "model energy units (k_B = 1)"},
          {"config", to_json(cfg)}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const RunConfig defaults;
  CLI::App app{
      "Self-consistent mean-field solver for the two-species Jaynes-Cummings-Hubbard lattice.\n"
      "Model defaults: omega=2.7 mu=0.2 eps_a=2.7 eps_b=2.5 g_a=2.0 g_b=0.1 kappa=0.4 "
      "kappa_prime=0.2, T=0.\n"
      "Solver defaults: damping=0.5 tol=1e-10 max_iter=100000 zero_threshold=1e-6 bz_grid=64,\n"
      "seeds 0,0;0.1,0.1;1,1;1,0.01;0.01,1. Scan default: g_a x g_b in [0,2]^2, 101x101.\n"
      "Sweep default: T in [0,6], 61 points. Exit codes: 0 ok, 2 config/stability, 3 no convergence.",
      "polariton-mf"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::string convention;
  std::string seed_list;
  int threads = 0;
  app.add_option("--config", config_path, "JSON configuration file");
  auto* out_opt = app.add_option("--out", out_path, "Output path (default: stdout)");
  auto* conv_opt = app.add_option("--convention", convention, "printed|mmf-consistent (default mmf-consistent)");
  auto* threads_opt = app.add_option("--threads", threads,
                                     "Worker threads for scans (fallback: POLARITON_MF_THREADS, then config)");
  auto* seeds_opt = app.add_option("--seed-battery", seed_list, "Initial guesses as 'a,b;c,d;...'");

  struct Override {
    const char* flag;
    const char* field;
    double value = 0.0;
    CLI::Option* opt = nullptr;
  };
  std::vector<Override> overrides{{"--g-a", "g_a"},     {"--g-b", "g_b"},
                                  {"--kappa", "kappa"}, {"--kappa-prime", "kappa_prime"},
                                  {"--omega", "omega"}, {"--mu", "mu"},
                                  {"--eps-a", "eps_a"}, {"--eps-b", "eps_b"}};
  for (auto& o : overrides) o.opt = app.add_option(o.flag, o.value, std::string("Override ") + o.field);
  double temperature = 0.0;
  auto* temp_opt = app.add_option("--temperature", temperature, "Temperature (model energy units)");

  app.add_subcommand("check", "Photon-branch stability and linear thresholds");
  app.add_subcommand("solve", "All mean-field branches at one parameter point");
  app.add_subcommand("scan", "Two-parameter phase diagram (CSV)");
  app.add_subcommand("sweep", "Equilibrium order parameters versus temperature (CSV)");
  app.add_subcommand("tc", "Critical temperature from the linearized map");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::invalid_argument("cannot read config '" + config_path + "'");
      json j;
      try {
        f >> j;
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
      }
      cfg = config_from_json(j, cfg);
    }
    if (const char* env = std::getenv("POLARITON_MF_THREADS"); env != nullptr && *env != '\0') {
      cfg.threads = std::stoi(env);
    }
    if (threads_opt->count() > 0) cfg.threads = threads;
    if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (out_opt->count() > 0) cfg.out = out_path;
    if (conv_opt->count() > 0) cfg.convention = analytic::parse_convention(convention);
    if (seeds_opt->count() > 0) cfg.solver.initial_guesses = parse_seed_battery(seed_list);
    for (const auto& o : overrides) {
      if (o.opt->count() > 0) set_field(cfg.model, o.field, o.value);
    }
    if (temp_opt->count() > 0) cfg.temperature = temperature;
    if (!(cfg.temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
    cfg.solver.validate();

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "check") return cmd_check(cfg, out);
    if (command == "solve") return cmd_solve(cfg, out);
    if (command == "tc") return cmd_tc(cfg, out);
    if (command == "scan") return cmd_scan(cfg, out, err);
    return cmd_sweep(cfg, out, err);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace polariton::cli
