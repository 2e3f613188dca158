#include "polariton/analytic.hpp"

#include <cmath>

#include "polariton/meanfield.hpp"

namespace polariton::analytic {

std::string to_string(Convention c) {
  return c == Convention::printed ? "printed" : "mmf-consistent";
}

Convention parse_convention(const std::string& s) {
  if (s == "printed") return Convention::printed;
  if (s == "mmf-consistent") return Convention::mmf_consistent;
  throw std::invalid_argument("unknown convention '" + s + "' (expected printed|mmf-consistent)");
}

double effective_dispersion(double omega_sym0, Convention c) {
  return c == Convention::printed ? omega_sym0 : 0.5 * omega_sym0;
}

double single_species_psi(double g, double eps, double omega_sym0, double temperature,
                          Convention c) {
  const double w = effective_dispersion(omega_sym0, c);
  if (temperature < kZeroTemperature) {
    const double a = g / (4.0 * w);
    const double b = eps / g;
    return a > b ? std::sqrt(a * a - b * b) : 0.0;
  }

  // Scalar gain minus one; strictly decreasing in psi > 0.
  auto excess = [&](double psi) {
    const double e = eigen_energy(psi, g, eps);
    return g * g * thermal_factor(e, temperature) / (4.0 * e * w) - 1.0;
  };
  if (!(excess(0.0) > 0.0)) return 0.0;
  double lo = 0.0;
  double hi = g / (2.0 * w) + eps / g;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double single_species_gc(double eps, double omega_sym0, Convention c) {
  return std::sqrt(4.0 * effective_dispersion(omega_sym0, c) * eps);
}

std::optional<double> single_species_tc(double g, double eps, double omega_sym0, Convention c) {
  const double x = 4.0 * eps * effective_dispersion(omega_sym0, c) / (g * g);
  if (!(x < 1.0)) return std::nullopt;
  return eps / (2.0 * std::atanh(x));
}

double zeroth_order_psi(double g, double eps, double omega_plus) {
  if (g * g / (4.0 * omega_plus) <= eps) return 0.0;
  const double a = g / (4.0 * omega_plus);
  const double b = eps / g;
  return std::sqrt(a * a - b * b);
}

double zeroth_order_gc(double eps, double omega_plus) { return std::sqrt(4.0 * omega_plus * eps); }

namespace {

double correction(SpeciesInput self, SpeciesInput other, double psi_self, double psi_other,
                  double omega_plus, double omega_minus, FirstOrderForm form) {
  if (psi_other == 0.0) return 0.0;
  const double detune = 1.0 - self.g * self.g / (4.0 * self.eps * omega_plus);
  if (std::abs(detune) < 1e-6) {
    throw DegenerateExpansion("expansion denominator vanishes at the zeroth-order threshold");
  }
  const double e_self = eigen_energy(psi_self, self.g, self.eps);
  const double e_other = eigen_energy(psi_other, other.g, other.eps);
  const double g2_other = other.g * other.g;
  if (psi_self == 0.0) {
    return g2_other * psi_other / (4.0 * detune * omega_minus * e_other);
  }
  if (form == FirstOrderForm::printed) {
    const double g2 = self.g * self.g;
    return (omega_plus / omega_minus) * (g2_other * e_self * e_self) /
           (g2 * g2 * e_other * e_other) * psi_other / (psi_self * psi_self * psi_self);
  }
  return g2_other * e_self * e_self * psi_other /
         (4.0 * omega_minus * e_other * self.g * self.g * psi_self * psi_self);
}

}  // namespace

std::pair<double, double> first_order_delta_psi(SpeciesInput a, SpeciesInput b, double omega_plus,
                                                double omega_minus, ZerothOrder zeroth,
                                                FirstOrderForm form) {
  if (std::isinf(omega_minus)) return {0.0, 0.0};
  return {correction(a, b, zeroth.psi_a, zeroth.psi_b, omega_plus, omega_minus, form),
          correction(b, a, zeroth.psi_b, zeroth.psi_a, omega_plus, omega_minus, form)};
}

}  // namespace polariton::analytic
