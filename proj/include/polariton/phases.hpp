#pragma once

#include <string>
#include <vector>

#include "polariton/model.hpp"
#include "polariton/solver.hpp"

namespace polariton {

enum class Phase { MI, SF_A, SF_B, SF_AB };

[[nodiscard]] std::string to_string(Phase phase);

/// MI when both |psi| are below zero_threshold. Otherwise the superfluid
/// sublabel follows the decoupled thresholds g_X^2 > 4 Omega_+ eps_X; a
/// superfluid with neither threshold met is SF_AB (induced by the coupling
/// between species). Sublabel boundaries are crossovers, so callers should
/// keep the raw order parameters alongside.
[[nodiscard]] Phase classify(const SolutionBranch& branch, const ModelParams& p,
                             const SolverConfig& cfg);

/// One scan axis over a Couplings field: count points linearly from min to
/// max inclusive. count == 1 gives just min.
struct Axis {
  std::string param = "g_a";
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  bool operator==(const Axis&) const = default;

  void validate() const;
  [[nodiscard]] double value(int i) const;
};

struct PhaseCell {
  double x = 0.0;  // value on the first axis
  double y = 0.0;  // value on the second axis
  OrderState state;
  double free_energy = 0.0;
  Phase label = Phase::MI;
  bool converged = false;
  bool ok = false;    // false when the cell failed; see error
  std::string error;
};

/// Cells are stored first-axis-major: index = i_x * y.count + i_y.
struct PhaseDiagram {
  Axis x;
  Axis y;
  double temperature = 0.0;
  std::vector<PhaseCell> cells;

  [[nodiscard]] const PhaseCell& at(int ix, int iy) const {
    return cells[static_cast<std::size_t>(ix) * y.count + iy];
  }
};

/// Equilibrium branch and label at every grid point. Cells are independent
/// and solved on up to `threads` workers; results do not depend on the
/// thread count. Per-cell failures (unstable model, no convergence) are
/// recorded in the cell.
[[nodiscard]] PhaseDiagram scan(const Couplings& base, const ModelOptions& model_opts,
                                const Axis& x, const Axis& y, double temperature,
                                const SolverConfig& cfg, int threads = 1);

struct SweepPoint {
  double temperature = 0.0;
  SolutionBranch branch;
  Phase label = Phase::MI;
  bool ok = false;
  std::string error;
};

/// Equilibrium branch at each temperature (strictly increasing). Each solve
/// uses the full seed battery plus the previous equilibrium as a warm start.
[[nodiscard]] std::vector<SweepPoint> temperature_sweep(const ModelParams& p,
                                                        const std::vector<double>& temperatures,
                                                        const SolverConfig& cfg);

/// count temperatures from t_min to t_max inclusive.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, int count);

}  // namespace polariton
