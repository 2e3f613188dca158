#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace polariton {

/// Closed-form reference results for the identical-species and decoupled
/// limits, plus the first-order expansion in the inter-species inverse
/// dispersion W- = 1/Omega_sym - 1/Omega_ant.
namespace analytic {

/// printed: the single-species relation with gain g^2 tanh(E/2T) / (4E Omega_sym).
/// mmf_consistent: the same relation reduced from the two-species matrix
/// form, which doubles the gain (Omega_sym -> Omega_sym / 2).
enum class Convention { printed, mmf_consistent };

[[nodiscard]] std::string to_string(Convention c);
/// Accepts "printed" and "mmf-consistent". Throws std::invalid_argument.
[[nodiscard]] Convention parse_convention(const std::string& s);

/// The dispersion that plays the role of Omega_sym in the closed forms.
[[nodiscard]] double effective_dispersion(double omega_sym0, Convention c);

/// Nontrivial single-species order parameter, 0 in the insulating regime.
/// T = 0 uses the closed form; T > 0 bisects the scalar relation.
[[nodiscard]] double single_species_psi(double g, double eps, double omega_sym0, double temperature,
                                        Convention c);

/// Critical coupling at T = 0.
[[nodiscard]] double single_species_gc(double eps, double omega_sym0, Convention c);

/// eps / (2 atanh(x)) with x = eps Omega_eff / (g^2 / 4); nullopt when x >= 1.
[[nodiscard]] std::optional<double> single_species_tc(double g, double eps, double omega_sym0,
                                                      Convention c);

/// Decoupled (W- = 0) solution for one species given Omega_+ = 1 / W+.
[[nodiscard]] double zeroth_order_psi(double g, double eps, double omega_plus);

/// Zeroth-order threshold sqrt(4 Omega_+ eps).
[[nodiscard]] double zeroth_order_gc(double eps, double omega_plus);

/// Raised when 1 - g^2 / (4 eps Omega_+) is within 1e-6 of zero.
class DegenerateExpansion : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Which expression is used for a species whose zeroth-order amplitude is
/// nonzero. printed follows the conventional (Omega_+/Omega_-) g_o^2 E^2 /
/// (g^4 E_o^2) psi_o / psi^3 form; rederived is the linearization of the
/// decoupled relation, g_o^2 E^2 psi_o / (4 Omega_- E_o g^2 psi^2). The
/// zero-amplitude case is identical in both.
enum class FirstOrderForm { printed, rederived };

struct SpeciesInput {
  double g;
  double eps;
};

struct ZerothOrder {
  double psi_a;
  double psi_b;
};

/// First-order corrections (d psi_a, d psi_b) around the zeroth-order
/// solution. omega_minus = 1 / W-; pass +infinity for W- = 0.
[[nodiscard]] std::pair<double, double> first_order_delta_psi(
    SpeciesInput a, SpeciesInput b, double omega_plus, double omega_minus, ZerothOrder zeroth,
    FirstOrderForm form = FirstOrderForm::printed);

}  // namespace analytic
}  // namespace polariton
