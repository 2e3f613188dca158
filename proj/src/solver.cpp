#include "polariton/solver.hpp"

#include <algorithm>
#include <cmath>

namespace polariton {

namespace {

constexpr double kMarginalResidual = 1e-6;
constexpr long kMarginalWindow = 100;

void apply_gauge(double& psi_a, double& psi_b) {
  if (psi_a < 0.0 || (psi_a == 0.0 && psi_b < 0.0)) {
    psi_a = -psi_a;
    psi_b = -psi_b;
  }
  // Avoid reporting -0.0.
  psi_a += 0.0;
  psi_b += 0.0;
}

bool same_branch(const SolutionBranch& x, const SolutionBranch& y, double tol) {
  return std::abs(x.state.psi_a - y.state.psi_a) <= tol &&
         std::abs(x.state.psi_b - y.state.psi_b) <= tol;
}

}  // namespace

std::vector<Seed> default_seed_battery() {
  return {{0.0, 0.0}, {0.1, 0.1}, {1.0, 1.0}, {1.0, 0.01}, {0.01, 1.0}};
}

void SolverConfig::validate() const {
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("damping must lie in (0, 1]");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(zero_threshold > tol)) throw std::invalid_argument("zero_threshold must exceed tol");
  if (initial_guesses.empty()) throw std::invalid_argument("at least one initial guess is required");
  if (bz_grid < 1) throw std::invalid_argument("bz_grid must be >= 1");
}

SolutionBranch iterate(const ModelParams& p, double temperature, const SolverConfig& cfg,
                       Seed seed) {
  const double a = cfg.damping;
  double psi_a = seed.psi_a;
  double psi_b = seed.psi_b;

  SolutionBranch out;
  double last = INFINITY;
  long decreasing = 0;
  long it = 0;
  while (it < cfg.max_iter) {
    ++it;
    const auto [ma, mb] = sc_map(psi_a, psi_b, p, temperature);
    const double na = (1.0 - a) * psi_a + a * ma;
    const double nb = (1.0 - a) * psi_b + a * mb;
    const double step = std::max(std::abs(na - psi_a), std::abs(nb - psi_b));
    psi_a = na;
    psi_b = nb;
    if (!std::isfinite(step)) {
      last = step;
      break;
    }
    decreasing = step < last ? decreasing + 1 : 0;
    last = step;
    if (step < cfg.tol) {
      out.converged = true;
      break;
    }
  }

  out.iterations = it;
  out.residual = last;
  out.marginal = !out.converged && std::isfinite(last) && last < kMarginalResidual &&
                 decreasing >= std::min(kMarginalWindow, cfg.max_iter - 1);
  apply_gauge(psi_a, psi_b);
  out.state = make_state(psi_a, psi_b, p, temperature);
  return out;
}

std::vector<SolutionBranch> solve_all(const ModelParams& p, double temperature,
                                      const SolverConfig& cfg) {
  return solve_all(p, temperature, cfg, {});
}

std::vector<SolutionBranch> solve_all(const ModelParams& p, double temperature,
                                      const SolverConfig& cfg,
                                      const std::vector<Seed>& extra_seeds) {
  cfg.validate();
  std::vector<Seed> seeds = cfg.initial_guesses;
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());

  std::vector<SolutionBranch> branches;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SolutionBranch b = iterate(p, temperature, cfg, seeds[i]);
    b.seed_index = static_cast<int>(i);
    if (!b.usable()) continue;
    const double dedup = 10.0 * cfg.zero_threshold;
    const bool seen = std::any_of(branches.begin(), branches.end(),
                                  [&](const SolutionBranch& o) { return same_branch(o, b, dedup); });
    if (!seen) branches.push_back(b);
  }
  if (branches.empty()) {
    throw NonConvergence("no initial guess converged within " + std::to_string(cfg.max_iter) +
                         " iterations");
  }

  const ThermoOptions thermo = cfg.thermo();
  const double log_part = photonic_log_sum(p, temperature, thermo.bz_grid);
  for (auto& b : branches) b.free_energy = free_energy(p, b.state, thermo, log_part);
  std::stable_sort(branches.begin(), branches.end(), [](const auto& x, const auto& y) {
    return x.free_energy.total < y.free_energy.total;
  });
  return branches;
}

double trivial_gain(const ModelParams& p, double temperature) {
  return spectral_radius(linearized_gain(p, temperature));
}

std::optional<double> critical_temperature(const ModelParams& p, const SolverConfig&) {
  if (trivial_gain(p, 0.0) <= 1.0) return std::nullopt;
  double lo = 0.0;
  double hi = 1.0;
  while (trivial_gain(p, hi) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw std::runtime_error("critical temperature bracket diverged");
  }
  while (hi - lo > 1e-8 * hi) {
    const double mid = 0.5 * (lo + hi);
    (trivial_gain(p, mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace polariton
