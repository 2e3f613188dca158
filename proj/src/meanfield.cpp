#include "polariton/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace polariton {

double eigen_energy(double psi, double g, double eps) { return std::hypot(g * psi, eps); }

double thermal_factor(double energy, double temperature) {
  if (temperature < kZeroTemperature) return 1.0;
  return std::tanh(std::min(energy / (2.0 * temperature), 700.0));
}

double coherence(double psi, double g, double eps, double temperature) {
  if (psi == 0.0 || g == 0.0) return 0.0;  // +0 rather than -0 in outputs
  const double e = eigen_energy(psi, g, eps);
  return -(psi * g / (2.0 * e)) * thermal_factor(e, temperature);
}

double species_gain(double psi, double g, double eps, double temperature) {
  const double e = eigen_energy(psi, g, eps);
  return g * g / (4.0 * e) * thermal_factor(e, temperature);
}

std::pair<double, double> sc_map(double psi_a, double psi_b, const ModelParams& p,
                                 double temperature) {
  const Couplings& c = p.couplings();
  const double drive_a = species_gain(psi_a, c.g_a, c.eps_a, temperature) * psi_a;
  const double drive_b = species_gain(psi_b, c.g_b, c.eps_b, temperature) * psi_b;
  const double wp = p.omega_plus_inv();
  const double wm = p.omega_minus_inv();
  return {wp * drive_a + wm * drive_b, wm * drive_a + wp * drive_b};
}

OrderState make_state(double psi_a, double psi_b, const ModelParams& p, double temperature) {
  const Couplings& c = p.couplings();
  return {psi_a, psi_b, coherence(psi_a, c.g_a, c.eps_a, temperature),
          coherence(psi_b, c.g_b, c.eps_b, temperature), temperature};
}

GainMatrix linearized_gain(const ModelParams& p, double temperature) {
  const Couplings& c = p.couplings();
  const double ga = species_gain(0.0, c.g_a, c.eps_a, temperature);
  const double gb = species_gain(0.0, c.g_b, c.eps_b, temperature);
  const double wp = p.omega_plus_inv();
  const double wm = p.omega_minus_inv();
  return {wp * ga, wm * gb, wm * ga, wp * gb};
}

double spectral_radius(const GainMatrix& m) {
  const double half_trace = 0.5 * (m.m_aa + m.m_bb);
  const double half_diff = 0.5 * (m.m_aa - m.m_bb);
  const double disc = half_diff * half_diff + m.m_ab * m.m_ba;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    return std::max(std::abs(half_trace + root), std::abs(half_trace - root));
  }
  // Complex pair: |lambda|^2 = det.
  return std::sqrt(half_trace * half_trace - disc);
}

}  // namespace polariton
