#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "polariton/analytic.hpp"
#include "polariton/model.hpp"
#include "polariton/phases.hpp"
#include "polariton/solver.hpp"

namespace polariton::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kConfigError = 2, kNonConvergence = 3 };

struct SweepRange {
  double t_min = 0.0;
  double t_max = 6.0;
  int count = 61;

  bool operator==(const SweepRange&) const = default;
};

struct RunConfig {
  Couplings model;
  ModelOptions model_options;
  SolverConfig solver;
  double temperature = 0.0;
  analytic::Convention convention = analytic::Convention::mmf_consistent;
  int threads = 1;
  Axis scan_x{"g_a", 0.0, 2.0, 101};
  Axis scan_y{"g_b", 0.0, 2.0, 101};
  SweepRange sweep;
  std::string out;

  bool operator==(const RunConfig&) const = default;
};

[[nodiscard]] nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Overlays the keys present in j onto base. Unknown keys and wrong types
/// throw std::invalid_argument.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// "a,b;c,d;..." -> seeds
[[nodiscard]] std::vector<Seed> parse_seed_battery(const std::string& list);

/// 17 significant digits.
[[nodiscard]] std::string format_number(double x);

void write_scan_csv(const PhaseDiagram& d, std::ostream& os);
void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& os);

/// Sidecar document: resolved config, convention, version, command.
[[nodiscard]] nlohmann::ordered_json metadata(const RunConfig& cfg, const std::string& command);

/// Entry point of the polariton-mf tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polariton::cli
