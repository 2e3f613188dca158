#include "polariton/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace polariton {

namespace {

double wrap_component(double k) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(k + std::numbers::pi, two_pi);
  if (w < 0.0) w += two_pi;
  return w - std::numbers::pi;
}

struct FieldRef {
  const char* name;
  double Couplings::*member;
};

constexpr std::array<FieldRef, 8> kFields{{
    {"omega", &Couplings::omega},
    {"mu", &Couplings::mu},
    {"eps_a", &Couplings::eps_a},
    {"eps_b", &Couplings::eps_b},
    {"g_a", &Couplings::g_a},
    {"g_b", &Couplings::g_b},
    {"kappa", &Couplings::kappa},
    {"kappa_prime", &Couplings::kappa_prime},
}};

double Couplings::*lookup(const std::string& name) {
  for (const auto& f : kFields) {
    if (name == f.name) return f.member;
  }
  throw std::invalid_argument("unknown model parameter '" + name + "'");
}

}  // namespace

Wavevector Wavevector::wrapped() const { return {wrap_component(kx), wrap_component(ky)}; }

double get_field(const Couplings& c, const std::string& name) { return c.*lookup(name); }

void set_field(Couplings& c, const std::string& name, double value) { c.*lookup(name) = value; }

bool is_field_name(const std::string& name) {
  return std::any_of(kFields.begin(), kFields.end(),
                     [&](const FieldRef& f) { return name == f.name; });
}

double omega0(const Wavevector& k, const Couplings& c) {
  return -4.0 * c.kappa_prime * std::cos(k.kx) * std::cos(k.ky) + c.omega - c.mu;
}

double omega1(const Wavevector& k, const Couplings& c) {
  return -2.0 * c.kappa * (std::cos(k.kx) + std::cos(k.ky));
}

double omega_sym(const Wavevector& k, const Couplings& c) { return omega0(k, c) + omega1(k, c); }

double omega_ant(const Wavevector& k, const Couplings& c) { return omega0(k, c) - omega1(k, c); }

StabilityReport check_stability(const Couplings& c, int bz_grid, const ModelOptions& opts) {
  // Even node counts put k = 0 and k = pi on the grid.
  const int n = std::max(2, bz_grid + (bz_grid % 2));
  const double h = 2.0 * std::numbers::pi / n;

  std::vector<double> cosines(n);
  for (int i = 0; i < n; ++i) cosines[i] = std::cos(-std::numbers::pi + h * i);

  const double detuning = c.omega - c.mu;
  double grid_min = INFINITY;
  for (double cx : cosines) {
    for (double cy : cosines) {
      const double diag = detuning - 4.0 * c.kappa_prime * cx * cy;
      const double offdiag = -2.0 * c.kappa * (cx + cy);
      grid_min = std::min({grid_min, diag + offdiag, diag - offdiag});
    }
  }

  // Both branches are bilinear in (cos kx, cos ky), so the extrema sit on
  // the zone corners.
  double corner_min = INFINITY;
  for (double kx : {0.0, std::numbers::pi}) {
    for (double ky : {0.0, std::numbers::pi}) {
      const Wavevector k{kx, ky};
      corner_min = std::min({corner_min, omega_sym(k, c), omega_ant(k, c)});
    }
  }

  StabilityReport r{};
  r.grid_minimum = grid_min;
  r.corner_minimum = corner_min;
  r.analytic_margin = (c.omega - c.mu) - 4.0 * c.kappa_prime - 4.0 * c.kappa;
  r.analytic_valid = c.kappa >= 0.0 && c.kappa_prime >= 0.0;

  const double scale = 1.0 + std::abs(c.omega - c.mu) + 4.0 * (std::abs(c.kappa) + std::abs(c.kappa_prime));
  if (std::isfinite(grid_min) && std::abs(grid_min - corner_min) > 1e-12 * scale) {
    throw std::logic_error("zone-corner minimum disagrees with grid minimum");
  }
  if (r.analytic_valid && std::isfinite(grid_min) &&
      std::abs(grid_min - r.analytic_margin) > 1e-12 * scale) {
    throw std::logic_error("closed-form stability margin disagrees with grid minimum");
  }

  r.minimum = r.analytic_valid ? r.analytic_margin : corner_min;
  r.stable = std::isfinite(r.minimum) && r.minimum > opts.stability_margin;
  return r;
}

ModelParams::ModelParams(const Couplings& c, const ModelOptions& opts) : c_(c), opts_(opts) {
  for (const auto& f : kFields) {
    if (!std::isfinite(c.*f.member)) {
      throw InvalidModel(std::string("parameter '") + f.name + "' is not finite");
    }
  }
  if (c.g_a < 0.0 || c.g_b < 0.0) throw InvalidModel("atom-photon couplings must be >= 0");
  if (c.eps_a <= 0.0 || c.eps_b <= 0.0) throw InvalidModel("transition energies must be > 0");
  if (!opts.allow_negative_hopping && (c.kappa < 0.0 || c.kappa_prime < 0.0)) {
    throw InvalidModel("negative hopping requires allow_negative_hopping");
  }
  const StabilityReport s = check_stability(c, 64, opts);
  if (!s.stable) {
    throw InvalidModel("photon branches not strictly positive: min energy " +
                       std::to_string(s.minimum));
  }
  sym0_ = omega_sym({0.0, 0.0}, c);
  ant0_ = omega_ant({0.0, 0.0}, c);
}

}  // namespace polariton
