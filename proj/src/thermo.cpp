#include "polariton/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace polariton {

namespace {

// Neumaier compensated sum; order of addition is fixed by the caller.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// -T ln(2 cosh(E / 2T)) = -E/2 - T ln(1 + exp(-E/T))
double half_level_free_energy(double e, double t) {
  if (t < kZeroTemperature) return -0.5 * e;
  return -0.5 * e - t * std::log1p(std::exp(-e / t));
}

}  // namespace

double atomic_free_energy(double e_a, double e_b, double temperature, FreeEnergyForm form) {
  const double f = half_level_free_energy(e_a, temperature) + half_level_free_energy(e_b, temperature);
  // The conventional -E - 2T ln(1 + exp(-E/T)) per atom is exactly twice the
  // half-level form.
  return form == FreeEnergyForm::printed ? 2.0 * f : f;
}

double photonic_log_sum(const ModelParams& p, double temperature, int bz_grid) {
  if (bz_grid < 1) throw std::invalid_argument("bz_grid must be >= 1");
  const Couplings& c = p.couplings();
  const int n = bz_grid;
  const double h = 2.0 * std::numbers::pi / n;
  std::vector<double> cosines(n);
  for (int i = 0; i < n; ++i) cosines[i] = std::cos(-std::numbers::pi + h * (i + 0.5));

  const bool zero_t = temperature < kZeroTemperature;
  const double detuning = c.omega - c.mu;
  CompensatedSum sum;
  for (double cx : cosines) {
    for (double cy : cosines) {
      const double diag = detuning - 4.0 * c.kappa_prime * cx * cy;
      const double offdiag = -2.0 * c.kappa * (cx + cy);
      const double sym = diag + offdiag;
      const double ant = diag - offdiag;
      if (!(sym > 0.0) || !(ant > 0.0)) {
        throw InvalidModel("non-positive photon branch energy on the quadrature grid");
      }
      if (!zero_t) {
        sum.add(std::log1p(-std::exp(-sym / temperature)));
        sum.add(std::log1p(-std::exp(-ant / temperature)));
      }
    }
  }
  if (zero_t) return 0.0;
  return temperature * sum.value() / (static_cast<double>(n) * n);
}

double displacement_shift(const ModelParams& p, double j_a, double j_b, ChannelMapping channels) {
  const Couplings& c = p.couplings();
  const double src_a = c.g_a * j_a;
  const double src_b = c.g_b * j_b;
  if (channels == ChannelMapping::literal_ab) {
    const double onsite = omega0({0.0, 0.0}, c);
    return (src_a * src_a + src_b * src_b) / onsite;
  }
  const double src_sym = (src_a + src_b) / std::numbers::sqrt2;
  const double src_ant = (src_a - src_b) / std::numbers::sqrt2;
  return src_sym * src_sym / p.omega_sym0() + src_ant * src_ant / p.omega_ant0();
}

double photonic_free_energy(const ModelParams& p, double j_a, double j_b, double temperature,
                            int bz_grid, ChannelMapping channels) {
  return photonic_log_sum(p, temperature, bz_grid) - displacement_shift(p, j_a, j_b, channels);
}

double double_count(const ModelParams& p, double j_a, double j_b, ChannelMapping channels) {
  return 2.0 * displacement_shift(p, j_a, j_b, channels);
}

double ground_state_energy(const ModelParams& p, const OrderState& state, ChannelMapping channels) {
  const Couplings& c = p.couplings();
  const double e_a = eigen_energy(state.psi_a, c.g_a, c.eps_a);
  const double e_b = eigen_energy(state.psi_b, c.g_b, c.eps_b);
  return 0.5 * (displacement_shift(p, state.j_a, state.j_b, channels) - e_a - e_b);
}

FreeEnergyBreakdown free_energy(const ModelParams& p, const OrderState& state,
                                const ThermoOptions& opts, std::optional<double> photon_log) {
  const Couplings& c = p.couplings();
  const double t = state.temperature;
  const double log_part = photon_log ? *photon_log : photonic_log_sum(p, t, opts.bz_grid);
  const double shift = displacement_shift(p, state.j_a, state.j_b, opts.channels);
  const double e_a = eigen_energy(state.psi_a, c.g_a, c.eps_a);
  const double e_b = eigen_energy(state.psi_b, c.g_b, c.eps_b);

  FreeEnergyBreakdown f;
  f.f_atomic = atomic_free_energy(e_a, e_b, t, opts.form);
  if (opts.form == FreeEnergyForm::printed) {
    f.f_photonic = log_part - shift;
    f.double_count = 2.0 * shift;
  } else {
    // Per cavity; the decoupling constant -2 g psi J per atom is the
    // double-counted piece.
    f.f_photonic = 0.5 * (log_part - shift);
    f.double_count = c.g_a * state.psi_a * state.j_a + c.g_b * state.psi_b * state.j_b;
  }
  f.total = f.f_atomic + f.f_photonic - f.double_count;
  return f;
}

double stationarity_residual(const ModelParams& p, double temperature, double psi_a, double psi_b,
                             const ThermoOptions& opts) {
  constexpr double step = 1e-5;
  const double log_part = photonic_log_sum(p, temperature, opts.bz_grid);
  auto total = [&](double a, double b) {
    return free_energy(p, make_state(a, b, p, temperature), opts, log_part).total;
  };
  const double da = (total(psi_a + step, psi_b) - total(psi_a - step, psi_b)) / (2.0 * step);
  const double db = (total(psi_a, psi_b + step) - total(psi_a, psi_b - step)) / (2.0 * step);
  return std::max(std::abs(da), std::abs(db));
}

}  // namespace polariton
