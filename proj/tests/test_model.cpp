#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polariton/model.hpp"

using namespace polariton;

namespace {

constexpr double kPi = std::numbers::pi;

Couplings base() { return Couplings{}; }

}  // namespace

TEST_CASE("omega0 at the printed points") {
  const Couplings c = base();
  CHECK(omega0({0, 0}, c) == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(omega0({kPi, 0}, c) == doctest::Approx(3.3).epsilon(1e-14));

  Couplings no_hop = c;
  no_hop.kappa_prime = 0.0;
  CHECK(omega0({0.3, -1.2}, no_hop) == doctest::Approx(c.omega - c.mu));
}

TEST_CASE("omega1 at the printed points") {
  const Couplings c = base();
  CHECK(omega1({0, 0}, c) == doctest::Approx(-1.6).epsilon(1e-14));
  CHECK(std::abs(omega1({kPi / 2, kPi / 2}, c)) < 1e-15);
  Couplings k0 = c;
  k0.kappa = 0.0;
  CHECK(omega1({0.7, 2.1}, k0) == 0.0);
}

TEST_CASE("symmetric and antisymmetric branches") {
  const Couplings c = base();
  CHECK(omega_sym({0, 0}, c) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(omega_ant({0, 0}, c) == doctest::Approx(3.3).epsilon(1e-12));
  CHECK(omega_sym({kPi, kPi}, c) == doctest::Approx(3.3).epsilon(1e-12));
  CHECK(omega_ant({kPi, kPi}, c) == doctest::Approx(0.1).epsilon(1e-12));

  Couplings flat = c;
  flat.kappa = flat.kappa_prime = 0.0;
  CHECK(omega_sym({1, 2}, flat) == doctest::Approx(2.5));
  CHECK(omega_ant({1, 2}, flat) == doctest::Approx(2.5));
}

TEST_CASE("inverse-dispersion combinations at k = 0") {
  const ModelParams p(base());
  CHECK(p.omega_plus_inv() == doctest::Approx(1.0 / 0.1 + 1.0 / 3.3).epsilon(1e-12));
  CHECK(p.omega_minus_inv() == doctest::Approx(1.0 / 0.1 - 1.0 / 3.3).epsilon(1e-12));
  CHECK(p.omega_plus_inv() == doctest::Approx(10.30303).epsilon(1e-6));
  CHECK(p.omega_minus_inv() == doctest::Approx(9.69697).epsilon(1e-6));

  Couplings k0 = base();
  k0.kappa = 0.0;
  CHECK(ModelParams(k0).omega_minus_inv() == 0.0);
  k0.kappa_prime = 0.0;
  CHECK(ModelParams(k0).omega_plus_inv() == doctest::Approx(2.0 / 2.5));
}

TEST_CASE("check_stability margins") {
  CHECK(check_stability(base()).minimum == doctest::Approx(0.1).epsilon(1e-12));

  Couplings c = base();
  c.kappa = 0.3;
  const auto r = check_stability(c);
  CHECK(r.minimum == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.stable);

  c.kappa = c.kappa_prime = 0.0;
  CHECK(check_stability(c).minimum == doctest::Approx(2.5));

  c = base();
  c.kappa = 0.5;  // 2.5 - 0.8 - 2.0 < 0
  const auto bad = check_stability(c);
  CHECK_FALSE(bad.stable);
  CHECK(bad.minimum == doctest::Approx(-0.3));
  CHECK_THROWS_AS(ModelParams{c}, InvalidModel);
}

TEST_CASE("stability margin is strict") {
  Couplings c = base();
  c.kappa = (2.5 - 0.8) / 4.0;  // margin exactly 0
  CHECK_FALSE(check_stability(c).stable);
  CHECK_THROWS_AS(ModelParams{c}, InvalidModel);
}

TEST_CASE("invalid parameter sets are rejected") {
  Couplings c = base();
  c.g_a = -1.0;
  CHECK_THROWS_AS(ModelParams{c}, InvalidModel);
  c = base();
  c.omega = NAN;
  CHECK_THROWS_AS(ModelParams{c}, InvalidModel);
  c = base();
  c.kappa = -0.1;
  CHECK_THROWS_AS(ModelParams{c}, InvalidModel);
  CHECK_NOTHROW(ModelParams(c, ModelOptions{true, 1e-12}));
}

TEST_CASE("negative hopping uses the corner minimum") {
  Couplings c = base();
  c.kappa = -0.3;
  c.kappa_prime = 0.1;
  const auto r = check_stability(c, 64, {true, 1e-12});
  CHECK_FALSE(r.analytic_valid);
  // Brute-force oracle on a fine grid.
  double brute = INFINITY;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Wavevector k{-kPi + 2 * kPi * i / n, -kPi + 2 * kPi * j / n};
      brute = std::min({brute, omega_sym(k, c), omega_ant(k, c)});
    }
  }
  CHECK(r.minimum == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("dispersions are 2pi-periodic and the branches swap under (pi, pi)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> k(-kPi, kPi);
  std::uniform_real_distribution<double> hop(0.0, 0.3);
  for (int trial = 0; trial < 500; ++trial) {
    Couplings c = base();
    c.kappa = hop(rng);
    c.kappa_prime = hop(rng);
    const Wavevector q{k(rng), k(rng)};
    const Wavevector shifted{q.kx + 2 * kPi, q.ky - 2 * kPi};
    CHECK(omega0(shifted, c) == doctest::Approx(omega0(q, c)).epsilon(1e-12));
    CHECK(omega1(shifted, c) == doctest::Approx(omega1(q, c)).epsilon(1e-12).scale(1.0));
    const Wavevector pp{q.kx + kPi, q.ky + kPi};
    CHECK(omega_sym(q, c) == doctest::Approx(omega_ant(pp, c)).epsilon(1e-12));
  }
}

TEST_CASE("grid minimum equals the closed-form margin for non-negative hopping") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> hop(0.0, 0.3);
  std::uniform_real_distribution<double> detuning(1.0, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    Couplings c = base();
    c.kappa = hop(rng);
    c.kappa_prime = hop(rng);
    c.omega = c.mu + detuning(rng);
    for (int n : {8, 64}) {
      const auto r = check_stability(c, n);
      CHECK(r.grid_minimum == doctest::Approx(r.analytic_margin).epsilon(1e-12));
    }
  }
}

TEST_CASE("wavevector wrapping") {
  const Wavevector w = Wavevector{3 * kPi + 0.25, -kPi}.wrapped();
  CHECK(w.kx == doctest::Approx(-kPi + 0.25));
  CHECK(w.ky == doctest::Approx(-kPi));
}

TEST_CASE("named field access") {
  Couplings c;
  set_field(c, "kappa_prime", 0.175);
  CHECK(get_field(c, "kappa_prime") == 0.175);
  CHECK(is_field_name("eps_b"));
  CHECK_FALSE(is_field_name("temperature"));
  CHECK_THROWS_AS(set_field(c, "nope", 1.0), std::invalid_argument);
}
