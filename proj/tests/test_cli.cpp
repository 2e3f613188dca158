#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polariton/cli.hpp"

using namespace polariton;
using namespace polariton::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "polariton-mf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polariton_mf_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

const char* kSmallScan = R"({"scan": {"x": {"param": "g_a", "min": 0.0, "max": 2.0, "count": 3},
                                       "y": {"param": "g_b", "min": 0.0, "max": 2.0, "count": 3}}})";

}  // namespace

TEST_CASE("config round trip") {
  RunConfig cfg;
  cfg.model.kappa = 0.35;
  cfg.model.kappa_prime = 0.175;
  cfg.solver.initial_guesses = {{0.3, 0.7}, {2.0, 0.0}};
  cfg.solver.free_energy = FreeEnergyForm::printed;
  cfg.solver.channels = ChannelMapping::literal_ab;
  cfg.convention = analytic::Convention::printed;
  cfg.temperature = 1.0 / 3.0;
  cfg.scan_x = {"kappa", 0.0, 0.3, 7};
  cfg.sweep = {0.5, 4.0, 8};
  cfg.threads = 4;
  cfg.out = "x.csv";
  const auto text = to_json(cfg).dump();
  CHECK(config_from_json(nlohmann::json::parse(text)) == cfg);
  CHECK(config_from_json(nlohmann::json::parse(to_json(RunConfig{}).dump())) == RunConfig{});

  CHECK_THROWS_AS((void)config_from_json(nlohmann::json::parse(R"({"modle": {}})")), std::invalid_argument);
  CHECK_THROWS_AS((void)config_from_json(nlohmann::json::parse(R"({"model": {"g_a": "big"}})")),
                  std::invalid_argument);
  const RunConfig partial = config_from_json(nlohmann::json::parse(R"({"model": {"g_b": 1.5}})"));
  CHECK(partial.model.g_b == 1.5);
  CHECK(partial.model.g_a == 2.0);
}

TEST_CASE("seed battery parsing") {
  const auto seeds = parse_seed_battery("0,0;0.1,0.1;1,1");
  REQUIRE(seeds.size() == 3);
  CHECK(seeds[1] == Seed{0.1, 0.1});
  CHECK(parse_seed_battery("-1.5,2e-3;").back() == Seed{-1.5, 2e-3});
  CHECK_THROWS_AS((void)parse_seed_battery("1;2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_seed_battery("1,x"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_seed_battery(""), std::invalid_argument);
}

TEST_CASE("numbers are written losslessly") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  for (double x : {1.0 / 3.0, -4.0246000000001, 5.0430737273327395, 1e-300}) {
    CHECK(std::stod(format_number(x)) == x);
  }
}

TEST_CASE("check command") {
  const Result ok = invoke({"check"});
  CHECK(ok.code == kOk);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["stable"] == true);
  CHECK(doc["margin"].get<double>() == doctest::Approx(0.1));
  CHECK(doc["omega_sym0"].get<double>() == doctest::Approx(0.1));
  CHECK(doc["omega_ant0"].get<double>() == doctest::Approx(3.3));
  CHECK(doc["g_a_c0"].get<double>() == doctest::Approx(1.02383).epsilon(1e-5));
  CHECK(doc["g_b_c0"].get<double>() == doctest::Approx(0.98518).epsilon(1e-5));
  CHECK(doc["convention"] == "mmf-consistent");

  const Result bad = invoke({"check", "--kappa", "0.5"});
  CHECK(bad.code == kConfigError);
  CHECK(nlohmann::json::parse(bad.out)["margin"].get<double>() == doctest::Approx(-0.3));

  const Result flat = invoke({"check", "--kappa", "0", "--kappa-prime", "0"});
  CHECK(nlohmann::json::parse(flat.out)["margin"].get<double>() == doctest::Approx(2.5));
}

TEST_CASE("exit codes") {
  CHECK(invoke({"solve", "--kappa", "0.5"}).code == kConfigError);
  CHECK(invoke({"solve", "--convention", "sideways"}).code == kConfigError);
  CHECK(invoke({"solve", "--config", scratch("missing.json").string()}).code == kConfigError);
  CHECK(invoke({"frobnicate"}).code == kConfigError);
  CHECK(invoke({"--help"}).code == kOk);

  const auto tiny = write_file("tiny_budget.json", R"({"solver": {"max_iter": 2}})");
  const Result nc = invoke({"solve", "--config", tiny.string(), "--seed-battery", "1,1"});
  CHECK(nc.code == kNonConvergence);
  CHECK(nc.err.find("error") != std::string::npos);

  const auto scan_cfg = write_file("tiny_scan.json", R"({"solver": {"max_iter": 2},
      "scan": {"x": {"param": "g_a", "min": 1.5, "max": 2.0, "count": 2},
               "y": {"param": "g_b", "min": 1.5, "max": 2.0, "count": 2}}})");
  CHECK(invoke({"scan", "--config", scan_cfg.string(), "--seed-battery", "1,1"}).code == kNonConvergence);
}

TEST_CASE("solve command") {
  const Result r = invoke({"solve"});
  REQUIRE(r.code == kOk);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& eq = doc["equilibrium"];
  CHECK(eq["phase"] == "SF_A");
  CHECK(eq["psi_a"].get<double>() > 1.0);
  CHECK(eq["converged"] == true);
  CHECK(eq["stationarity_residual"].get<double>() <= 1e-4);
  CHECK(doc["branches"].size() >= 2);
  CHECK(doc["config"]["model"]["g_b"].get<double>() == 0.1);
  CHECK(doc["convention"] == "mmf-consistent");
  CHECK(config_from_json(doc["config"]).model == Couplings{});
}

TEST_CASE("tc command") {
  const auto doc = nlohmann::json::parse(invoke({"tc"}).out);
  CHECK(doc["critical_temperature"].get<double>() == doctest::Approx(5.0430737273327395).epsilon(1e-7));
  const auto none = nlohmann::json::parse(invoke({"tc", "--g-a", "0", "--g-b", "0"}).out);
  CHECK(none["critical_temperature"].is_null());
  const auto printed = nlohmann::json::parse(invoke({"tc", "--convention", "printed"}).out);
  CHECK(printed["convention"] == "printed");
  CHECK(printed["single_species_tc_a"].get<double>() != doc["single_species_tc_a"].get<double>());
}

TEST_CASE("single-cell scan matches solve") {
  const Result scan = invoke({"scan", "--config",
                              write_file("one_cell.json", R"({"scan": {"x": {"param": "g_a", "min": 1.3, "max": 1.3, "count": 1},
                                                                      "y": {"param": "g_b", "min": 0.7, "max": 0.7, "count": 1}}})")
                                  .string()});
  REQUIRE(scan.code == kOk);
  const auto lines = split(scan.out, '\n');
  REQUIRE(lines.size() == 2);
  const auto row = split(lines[1], ',');
  REQUIRE(row.size() == 9);

  const auto eq = nlohmann::json::parse(invoke({"solve", "--g-a", "1.3", "--g-b", "0.7"}).out)["equilibrium"];
  CHECK(std::stod(row[2]) == eq["psi_a"].get<double>());
  CHECK(std::stod(row[3]) == eq["psi_b"].get<double>());
  CHECK(std::stod(row[4]) == eq["j_a"].get<double>());
  CHECK(std::stod(row[5]) == eq["j_b"].get<double>());
  CHECK(std::stod(row[6]) == eq["free_energy"]["total"].get<double>());
  CHECK(row[7] == eq["phase"].get<std::string>());
}

TEST_CASE("scan CSV matches the golden file") {
  const Result r = invoke({"scan", "--config", write_file("small.json", kSmallScan).string()});
  REQUIRE(r.code == kOk);
  const std::string golden = slurp(fs::path(POLARITON_GOLDEN_DIR) / "scan_3x3.csv");
  const auto want = split(golden, '\n');
  const auto got = split(r.out, '\n');
  REQUIRE(got.size() == want.size());
  CHECK(got[0] == "axis1,axis2,psi_a,psi_b,j_a,j_b,free_energy,phase,converged");
  CHECK(got[0] == want[0]);
  for (std::size_t i = 1; i < want.size(); ++i) {
    const auto w = split(want[i], ','), g = split(got[i], ',');
    REQUIRE(g.size() == 9);
    for (int col = 0; col < 7; ++col) {
      CHECK(std::stod(g[col]) == doctest::Approx(std::stod(w[col])).epsilon(1e-9).scale(1.0));
    }
    CHECK(g[7] == w[7]);
    CHECK(g[8] == w[8]);
  }
  // Metadata goes to stderr when the table goes to stdout.
  const auto meta = nlohmann::json::parse(r.err);
  CHECK(meta["command"] == "scan");
  CHECK(meta["version"] == kVersion);
  CHECK(meta["config"]["scan"]["x"]["count"] == 3);
}

TEST_CASE("sweep CSV and sidecar") {
  const fs::path out = scratch("sweep.csv");
  const auto cfg = write_file("sweep.json", R"({"sweep": {"t_min": 0.0, "t_max": 6.0, "count": 7}})");
  REQUIRE(invoke({"sweep", "--config", cfg.string(), "--out", out.string()}).code == kOk);
  const auto lines = split(slurp(out), '\n');
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "T,psi_a,psi_b,j_a,j_b,phase");
  CHECK(split(lines[1], ',')[5] == "SF_A");
  CHECK(split(lines[7], ',')[5] == "MI");
  const auto meta = nlohmann::json::parse(slurp(out.string() + ".meta.json"));
  CHECK(meta["command"] == "sweep");
  CHECK(meta["temperature_units"].get<std::string>().find("model energy") != std::string::npos);
  CHECK(config_from_json(meta["config"]).sweep.count == 7);
}

TEST_CASE("thread count precedence and determinism") {
  const auto cfg = write_file("threads.json", R"({"threads": 2,
      "scan": {"x": {"param": "g_a", "min": 0.0, "max": 2.0, "count": 6},
               "y": {"param": "g_b", "min": 0.0, "max": 2.0, "count": 5}}})");
  const fs::path a = scratch("t1.csv"), b = scratch("t8.csv"), c = scratch("env.csv");
  REQUIRE(invoke({"scan", "--config", cfg.string(), "--threads", "1", "--out", a.string()}).code == kOk);
  REQUIRE(invoke({"scan", "--config", cfg.string(), "--threads", "8", "--out", b.string()}).code == kOk);
  CHECK(slurp(a) == slurp(b));
  CHECK(nlohmann::json::parse(slurp(b.string() + ".meta.json"))["config"]["threads"] == 8);

  ::setenv("POLARITON_MF_THREADS", "3", 1);
  REQUIRE(invoke({"scan", "--config", cfg.string(), "--out", c.string()}).code == kOk);
  CHECK(nlohmann::json::parse(slurp(c.string() + ".meta.json"))["config"]["threads"] == 3);
  REQUIRE(invoke({"scan", "--config", cfg.string(), "--threads", "5", "--out", c.string()}).code == kOk);
  CHECK(nlohmann::json::parse(slurp(c.string() + ".meta.json"))["config"]["threads"] == 5);
  ::unsetenv("POLARITON_MF_THREADS");
  CHECK(slurp(a) == slurp(c));
}
