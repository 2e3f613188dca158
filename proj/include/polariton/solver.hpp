#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polariton/meanfield.hpp"
#include "polariton/model.hpp"
#include "polariton/thermo.hpp"

namespace polariton {

/// Every seed of a solve failed to converge.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Seed {
  double psi_a = 0.0;
  double psi_b = 0.0;

  bool operator==(const Seed&) const = default;
};

[[nodiscard]] std::vector<Seed> default_seed_battery();

struct SolverConfig {
  double damping = 0.5;          // relaxation weight of the new map value, (0, 1]
  double tol = 1e-10;            // on max |step| of (psi_a, psi_b)
  long max_iter = 100000;
  double zero_threshold = 1e-6;  // |psi| below this counts as zero
  std::vector<Seed> initial_guesses = default_seed_battery();
  int bz_grid = 64;
  FreeEnergyForm free_energy = FreeEnergyForm::consistent;
  ChannelMapping channels = ChannelMapping::sym_ant;

  bool operator==(const SolverConfig&) const = default;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  [[nodiscard]] ThermoOptions thermo() const { return {free_energy, channels, bz_grid}; }
};

struct SolutionBranch {
  OrderState state;
  FreeEnergyBreakdown free_energy;
  bool converged = false;
  // Ran out of iterations with a small, monotonically decreasing step.
  bool marginal = false;
  long iterations = 0;
  double residual = 0.0;  // last step norm
  int seed_index = -1;

  [[nodiscard]] bool usable() const { return converged || marginal; }
};

/// Damped Picard iteration psi <- (1 - a) psi + a sc_map(psi) from one seed.
/// The result is reported with psi_a >= 0 (the map is odd) and J recomputed
/// at the final psi. Free energy is not filled in.
[[nodiscard]] SolutionBranch iterate(const ModelParams& p, double temperature,
                                     const SolverConfig& cfg, Seed seed);

/// Runs every seed, drops duplicates (order parameters within
/// 10 zero_threshold, first seed wins), attaches free energies and sorts
/// ascending. front() is the equilibrium branch. Throws NonConvergence when
/// no seed produced a usable branch.
[[nodiscard]] std::vector<SolutionBranch> solve_all(const ModelParams& p, double temperature,
                                                    const SolverConfig& cfg);

/// solve_all with extra seeds tried after the configured battery.
[[nodiscard]] std::vector<SolutionBranch> solve_all(const ModelParams& p, double temperature,
                                                    const SolverConfig& cfg,
                                                    const std::vector<Seed>& extra_seeds);

/// Spectral radius of the linearized map at temperature T.
[[nodiscard]] double trivial_gain(const ModelParams& p, double temperature);

/// Temperature at which the spectral radius of the linearized map drops
/// through 1, bracketed by doubling and bisected to 1e-8 relative width.
/// nullopt when the trivial solution is already stable at T = 0.
[[nodiscard]] std::optional<double> critical_temperature(const ModelParams& p,
                                                         const SolverConfig& cfg = {});

}  // namespace polariton
