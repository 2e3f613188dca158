#pragma once

#include <stdexcept>
#include <string>

namespace polariton {

/// Raised when a parameter set is non-finite, has negative couplings, or
/// leaves a photon branch without a positive energy somewhere in the zone.
class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raw couplings of the bipartite cavity lattice (hbar = k_B = 1). No
/// validation happens here; wrap in ModelParams before solving.
struct Couplings {
  double omega = 2.7;        // cavity photon frequency
  double mu = 0.2;           // photon chemical potential
  double eps_a = 2.7;        // transition energy, species A
  double eps_b = 2.5;        // transition energy, species B
  double g_a = 2.0;          // atom-photon coupling, species A
  double g_b = 0.1;          // atom-photon coupling, species B
  double kappa = 0.4;        // nearest-neighbour (A<->B) hopping
  double kappa_prime = 0.2;  // next-nearest (A<->A, B<->B) hopping

  bool operator==(const Couplings&) const = default;
};

struct ModelOptions {
  // Negative hoppings flip the location of the band minimum; only the
  // zone-corner search is trusted then.
  bool allow_negative_hopping = false;
  double stability_margin = 1e-12;

  bool operator==(const ModelOptions&) const = default;
};

/// Crystal momentum in units of the inverse lattice constant.
struct Wavevector {
  double kx = 0.0;
  double ky = 0.0;

  /// Folds both components into [-pi, pi).
  [[nodiscard]] Wavevector wrapped() const;
};

/// Named access to Couplings fields, used by parameter scans and the CLI.
/// Accepted names: omega, mu, eps_a, eps_b, g_a, g_b, kappa, kappa_prime.
[[nodiscard]] double get_field(const Couplings& c, const std::string& name);
void set_field(Couplings& c, const std::string& name, double value);
[[nodiscard]] bool is_field_name(const std::string& name);

/// Lattice dispersions. Pure, valid for any couplings.
[[nodiscard]] double omega0(const Wavevector& k, const Couplings& c);
[[nodiscard]] double omega1(const Wavevector& k, const Couplings& c);
[[nodiscard]] double omega_sym(const Wavevector& k, const Couplings& c);
[[nodiscard]] double omega_ant(const Wavevector& k, const Couplings& c);

struct StabilityReport {
  double grid_minimum;      // min over a bz_grid x bz_grid node grid
  double corner_minimum;    // min over k in {0, pi}^2 (exact for bilinear cos form)
  double analytic_margin;   // (omega - mu) - 4 kappa' - 4 kappa
  bool analytic_valid;      // analytic_margin is the true minimum (kappa, kappa' >= 0)
  double minimum;           // the value used for the verdict
  bool stable;
};

/// Minimum photon-branch energy over the Brillouin zone, cross-checked
/// between a node grid and the closed-form minimum. Never throws.
[[nodiscard]] StabilityReport check_stability(const Couplings& c, int bz_grid = 64,
                                              const ModelOptions& opts = {});

/// Validated couplings. Construction throws InvalidModel unless every field
/// is finite, couplings are non-negative, hoppings are non-negative (unless
/// allowed), and both photon branches are strictly positive across the zone.
class ModelParams {
 public:
  explicit ModelParams(const Couplings& c, const ModelOptions& opts = {});

  [[nodiscard]] const Couplings& couplings() const noexcept { return c_; }
  [[nodiscard]] const ModelOptions& options() const noexcept { return opts_; }

  // k = 0 branch energies and the inverse-dispersion combinations of the
  // self-consistency matrix.
  [[nodiscard]] double omega_sym0() const noexcept { return sym0_; }
  [[nodiscard]] double omega_ant0() const noexcept { return ant0_; }
  [[nodiscard]] double omega_plus_inv() const noexcept { return 1.0 / sym0_ + 1.0 / ant0_; }
  [[nodiscard]] double omega_minus_inv() const noexcept { return 1.0 / sym0_ - 1.0 / ant0_; }

  /// Same options, different couplings.
  [[nodiscard]] ModelParams with(const Couplings& c) const { return ModelParams(c, opts_); }

 private:
  Couplings c_;
  ModelOptions opts_;
  double sym0_;
  double ant0_;
};

}  // namespace polariton
