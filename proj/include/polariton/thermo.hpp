#pragma once

#include <optional>

#include "polariton/meanfield.hpp"
#include "polariton/model.hpp"

namespace polariton {

/// Which free-energy functional orders the branches.
///
/// consistent: per-cavity mean-field functional
///   F = sum_X [-T ln 2cosh(E_X / 2T)] + (photon log sum - S) / 2 - sum_X g_X psi_X J_X
/// whose stationary points in psi (with J from the coherence relation) are
/// exactly the self-consistent solutions. Equals the ground-state energy per
/// cavity at T = 0.
///
/// printed: per-unit-cell F_f + F_p - E_m with E_m = 2 S, as the formulas
/// are usually written. Kept for comparison; not stationary at solutions.
enum class FreeEnergyForm { consistent, printed };

/// How the k = 0 displacement shift S = sum (gJ)^2 / Omega is assembled.
/// sym_ant uses the diagonal photon channels (the only basis in which the
/// photon Hamiltonian is diagonal); literal_ab uses the sublattice labels
/// with the on-site energy Omega_0(0) for both.
enum class ChannelMapping { sym_ant, literal_ab };

struct ThermoOptions {
  FreeEnergyForm form = FreeEnergyForm::consistent;
  ChannelMapping channels = ChannelMapping::sym_ant;
  int bz_grid = 64;

  bool operator==(const ThermoOptions&) const = default;
};

struct FreeEnergyBreakdown {
  double f_atomic = 0.0;
  double f_photonic = 0.0;
  double double_count = 0.0;
  double total = 0.0;  // f_atomic + f_photonic - double_count
};

[[nodiscard]] double atomic_free_energy(double e_a, double e_b, double temperature,
                                        FreeEnergyForm form);

/// Uniform midpoint-grid mean over the zone of
///   T [ln(1 - exp(-Omega_sym(k)/T)) + ln(1 - exp(-Omega_ant(k)/T))].
/// Zero at T = 0. Throws InvalidModel on a non-positive branch energy.
[[nodiscard]] double photonic_log_sum(const ModelParams& p, double temperature, int bz_grid);

/// S = sum over channels of (g J)^2 / Omega(k = 0).
[[nodiscard]] double displacement_shift(const ModelParams& p, double j_a, double j_b,
                                        ChannelMapping channels = ChannelMapping::sym_ant);

/// photonic_log_sum - S (per unit cell).
[[nodiscard]] double photonic_free_energy(const ModelParams& p, double j_a, double j_b,
                                          double temperature, int bz_grid,
                                          ChannelMapping channels = ChannelMapping::sym_ant);

/// 2 S, the conventional double-counting correction. Non-negative.
[[nodiscard]] double double_count(const ModelParams& p, double j_a, double j_b,
                                  ChannelMapping channels = ChannelMapping::sym_ant);

/// (S - E_a - E_b) / 2 per cavity, for a T = 0 state.
[[nodiscard]] double ground_state_energy(const ModelParams& p, const OrderState& state,
                                         ChannelMapping channels = ChannelMapping::sym_ant);

/// photon_log may be passed in when already known for (p, T); it does not
/// depend on the state.
[[nodiscard]] FreeEnergyBreakdown free_energy(const ModelParams& p, const OrderState& state,
                                              const ThermoOptions& opts = {},
                                              std::optional<double> photon_log = std::nullopt);

/// Max-norm of the central-difference gradient (step 1e-5) of the total
/// free energy with respect to (psi_a, psi_b), J re-solved at every probe.
[[nodiscard]] double stationarity_residual(const ModelParams& p, double temperature, double psi_a,
                                           double psi_b, const ThermoOptions& opts = {});

}  // namespace polariton
