#pragma once

#include <utility>

#include "polariton/model.hpp"

namespace polariton {

/// Temperatures below this are handled as exactly zero (tanh factor = 1).
inline constexpr double kZeroTemperature = 1e-12;

/// Mean-field state of one unit cell. psi_* are the photon condensate
/// amplitudes on the A/B sublattices, j_* the atomic coherences.
struct OrderState {
  double psi_a = 0.0;
  double psi_b = 0.0;
  double j_a = 0.0;
  double j_b = 0.0;
  double temperature = 0.0;

  bool operator==(const OrderState&) const = default;
};

/// Linearization of the self-consistency map about psi = 0.
struct GainMatrix {
  double m_aa = 0.0;
  double m_ab = 0.0;
  double m_ba = 0.0;
  double m_bb = 0.0;
};

/// sqrt((g psi)^2 + eps^2)
[[nodiscard]] double eigen_energy(double psi, double g, double eps);

/// tanh(E / 2T), with T < kZeroTemperature giving 1 and the argument
/// clamped at 700.
[[nodiscard]] double thermal_factor(double energy, double temperature);

/// Atomic coherence J = -(psi g / 2E) tanh(E / 2T).
[[nodiscard]] double coherence(double psi, double g, double eps, double temperature);

/// Gain factor g^2 / (4E) tanh(E / 2T) of one species, so that the atoms
/// respond to a condensate psi with -g J = 2 gain * psi.
[[nodiscard]] double species_gain(double psi, double g, double eps, double temperature);

/// Right-hand side of the coupled self-consistency relation
///   psi_a' = W+ gain_a psi_a + W- gain_b psi_b
///   psi_b' = W- gain_a psi_a + W+ gain_b psi_b
/// with W+/- the k = 0 inverse-dispersion combinations.
[[nodiscard]] std::pair<double, double> sc_map(double psi_a, double psi_b, const ModelParams& p,
                                               double temperature);

/// Fills j_a, j_b from psi via the atomic coherence relation.
[[nodiscard]] OrderState make_state(double psi_a, double psi_b, const ModelParams& p,
                                    double temperature);

[[nodiscard]] GainMatrix linearized_gain(const ModelParams& p, double temperature);

/// Largest |eigenvalue| of a real 2x2 matrix (closed-form quadratic).
[[nodiscard]] double spectral_radius(const GainMatrix& m);

}  // namespace polariton
