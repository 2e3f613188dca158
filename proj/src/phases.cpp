#include "polariton/phases.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "polariton/analytic.hpp"

namespace polariton {

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::MI: return "MI";
    case Phase::SF_A: return "SF_A";
    case Phase::SF_B: return "SF_B";
    case Phase::SF_AB: return "SF_AB";
  }
  return "?";
}

Phase classify(const SolutionBranch& branch, const ModelParams& p, const SolverConfig& cfg) {
  const double zero = cfg.zero_threshold;
  if (std::abs(branch.state.psi_a) < zero && std::abs(branch.state.psi_b) < zero) return Phase::MI;

  const Couplings& c = p.couplings();
  const double omega_plus = 1.0 / p.omega_plus_inv();
  const bool a_above = c.g_a * c.g_a > 4.0 * omega_plus * c.eps_a;
  const bool b_above = c.g_b * c.g_b > 4.0 * omega_plus * c.eps_b;
  if (a_above && !b_above) return Phase::SF_A;
  if (b_above && !a_above) return Phase::SF_B;
  return Phase::SF_AB;
}

void Axis::validate() const {
  if (!is_field_name(param)) throw std::invalid_argument("unknown axis parameter '" + param + "'");
  if (count < 1) throw std::invalid_argument("axis '" + param + "' needs count >= 1");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw std::invalid_argument("axis '" + param + "' bounds must be finite");
  }
  if (count > 1 && !(max > min)) {
    throw std::invalid_argument("axis '" + param + "' must be strictly increasing");
  }
}

double Axis::value(int i) const {
  if (count == 1) return min;
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / (count - 1);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo : i == count - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

namespace {

PhaseCell solve_cell(const Couplings& base, const ModelOptions& model_opts, const Axis& x,
                     const Axis& y, int ix, int iy, double temperature, const SolverConfig& cfg) {
  PhaseCell cell;
  cell.x = x.value(ix);
  cell.y = y.value(iy);
  Couplings c = base;
  set_field(c, x.param, cell.x);
  set_field(c, y.param, cell.y);
  try {
    const ModelParams p(c, model_opts);
    const auto branches = solve_all(p, temperature, cfg);
    const SolutionBranch& eq = branches.front();
    cell.state = eq.state;
    cell.free_energy = eq.free_energy.total;
    cell.label = classify(eq, p, cfg);
    cell.converged = eq.converged;
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

PhaseDiagram scan(const Couplings& base, const ModelOptions& model_opts, const Axis& x,
                  const Axis& y, double temperature, const SolverConfig& cfg, int threads) {
  x.validate();
  y.validate();
  cfg.validate();

  PhaseDiagram d{x, y, temperature, {}};
  const std::size_t total = static_cast<std::size_t>(x.count) * y.count;
  d.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const int ix = static_cast<int>(i / y.count);
      const int iy = static_cast<int>(i % y.count);
      d.cells[i] = solve_cell(base, model_opts, x, y, ix, iy, temperature, cfg);
    }
  };

  const int n = std::clamp(threads, 1, static_cast<int>(std::min<std::size_t>(total, 256)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return d;
}

std::vector<SweepPoint> temperature_sweep(const ModelParams& p,
                                          const std::vector<double>& temperatures,
                                          const SolverConfig& cfg) {
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    if (!(temperatures[i] >= 0.0) || (i > 0 && !(temperatures[i] > temperatures[i - 1]))) {
      throw std::invalid_argument("sweep temperatures must be >= 0 and strictly increasing");
    }
  }

  std::vector<SweepPoint> out;
  out.reserve(temperatures.size());
  std::vector<Seed> warm;
  for (double t : temperatures) {
    SweepPoint pt;
    pt.temperature = t;
    try {
      const auto branches = solve_all(p, t, cfg, warm);
      pt.branch = branches.front();
      pt.label = classify(pt.branch, p, cfg);
      pt.ok = true;
      warm = {{pt.branch.state.psi_a, pt.branch.state.psi_b}};
    } catch (const NonConvergence& e) {
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace polariton
