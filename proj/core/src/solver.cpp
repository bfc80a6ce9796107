#include "hcg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "hcg/economics.hpp"

namespace hcg {

namespace {

// Uniform double in [0,1) from the top 53 bits of the generator output.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double max_element_or(const std::vector<double>& v, double fallback) {
  if (v.empty()) return fallback;
  return *std::max_element(v.begin(), v.end());
}

// True objective of the instance's variant at x (no validation).
double raw_objective(const std::vector<double>& x, const GameInstance& inst) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < x.size(); ++j) {
    best = std::max(best, x[j] * inst.gamma[j]);
  }
  if (inst.variant == Variant::A) return best;
  const double penalty = reconfig_penalty(x, inst.psi);
  const double sign = inst.penalty_mode == PenaltyMode::Literal ? 1.0 : -1.0;
  return inst.beta * best + sign * (1.0 - inst.beta) * penalty;
}

// Gradient of the smoothed objective: log-sum-exp with temperature mu in
// place of the max term, plus the exact (quadratic) penalty gradient.
void smoothed_gradient(const std::vector<double>& x, const GameInstance& inst, double mu,
                       std::vector<double>& grad) {
  const std::size_t n = x.size();
  double zmax = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) zmax = std::max(zmax, x[j] * inst.gamma[j]);
  double wsum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    grad[j] = std::exp((x[j] * inst.gamma[j] - zmax) / mu);
    wsum += grad[j];
  }
  const double beta = inst.variant == Variant::A ? 1.0 : inst.beta;
  const double sign = inst.penalty_mode == PenaltyMode::Literal ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    grad[j] = beta * (grad[j] / wsum) * inst.gamma[j];
    if (inst.variant == Variant::B) {
      grad[j] += sign * (1.0 - beta) * inst.psi[j] * (1.0 - 2.0 * x[j]);
    }
  }
}

struct DescentResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = true;
};

// Projected subgradient descent on the exact objective with a geometrically
// diminishing step. The decaying step locks the iterate into the basin
// nearest its start, which keeps multistart diversity intact; progress
// beyond 1e-4 in the final fifth of the budget means the schedule was too
// short for the promised accuracy and is reported as non-convergence.
DescentResult subgrad_descent(std::vector<double> x, const GameInstance& inst,
                              double eta0, const SolverOptions& options) {
  const std::size_t n = x.size();
  const int iters = std::max(100, options.max_iterations);
  const double decay = std::pow(1e-6, 1.0 / iters);
  const double beta = inst.variant == Variant::A ? 1.0 : inst.beta;
  const double sign = inst.penalty_mode == PenaltyMode::Literal ? 1.0 : -1.0;

  DescentResult out;
  out.x = x;
  out.value = raw_objective(x, inst);
  double best_at_checkpoint = out.value;
  const int checkpoint = iters - iters / 5;

  double eta = eta0;
  std::vector<double> step(n);
  for (int k = 0; k < iters; ++k) {
    if (k == checkpoint) best_at_checkpoint = out.value;
    std::size_t top = 0;
    double top_value = x[0] * inst.gamma[0];
    for (std::size_t j = 1; j < n; ++j) {
      const double v = x[j] * inst.gamma[j];
      if (v > top_value) {
        top_value = v;
        top = j;
      }
    }
    step = x;
    step[top] -= eta * beta * inst.gamma[top];
    if (inst.variant == Variant::B) {
      for (std::size_t j = 0; j < n; ++j) {
        step[j] -= eta * sign * (1.0 - beta) * inst.psi[j] * (1.0 - 2.0 * x[j]);
      }
    }
    x = project_to_simplex(std::move(step));
    step.resize(n);
    const double value = raw_objective(x, inst);
    if (value < out.value) {
      out.value = value;
      out.x = x;
    }
    eta *= decay;
  }
  out.converged = best_at_checkpoint - out.value <= 1e-4 * (1.0 + std::abs(out.value));
  return out;
}

// Projected gradient descent on the annealed log-sum-exp smoothing.
// Returns the best iterate (by true objective) across anneal levels.
DescentResult anneal_descent(std::vector<double> x, const GameInstance& inst,
                             const SolverOptions& options) {
  constexpr int kLevels = 8;
  constexpr double kLevelShrink = 0.2;
  const int per_level = std::max(50, options.max_iterations / kLevels);
  const std::size_t n = x.size();
  const double gmax = max_element_or(inst.gamma, 1.0);
  const double pmax = inst.variant == Variant::B ? max_element_or(inst.psi, 0.0) : 0.0;
  const double beta = inst.variant == Variant::A ? 1.0 : inst.beta;

  DescentResult out;
  out.x = x;
  out.value = raw_objective(x, inst);

  std::vector<double> grad(n), step(n);
  double mu = 0.3 * gmax;
  double prev_level_best = out.value;
  for (int level = 0; level < kLevels; ++level, mu *= kLevelShrink) {
    const double lipschitz = beta * gmax * gmax / mu + 2.0 * (1.0 - beta) * pmax;
    const double eta = 1.0 / lipschitz;
    for (int it = 0; it < per_level; ++it) {
      smoothed_gradient(x, inst, mu, grad);
      for (std::size_t j = 0; j < n; ++j) step[j] = x[j] - eta * grad[j];
      x = project_to_simplex(std::move(step));
      step.resize(n);
    }
    const double value = raw_objective(x, inst);
    if (level == kLevels - 1) {
      // Schedule ends while still making macroscopic progress: local
      // convergence cannot be claimed for this start.
      out.converged = value >= prev_level_best - 1e-4 * (1.0 + std::abs(value));
    }
    prev_level_best = std::min(prev_level_best, value);
    if (value < out.value) {
      out.value = value;
      out.x = x;
    }
  }
  return out;
}

bool lex_less(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// C(n, m) saturated well above the enumeration cutoff.
unsigned long long binomial_capped(std::size_t n, std::size_t m, unsigned long long cap) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  unsigned long long c = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    c = c * (n - m + i) / i;  // intermediate values are exact binomials
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> build_payoff_diag(std::span<const GameVulnerability> offered,
                                      double time_constant) {
  std::vector<double> gamma;
  gamma.reserve(offered.size());
  for (const auto& v : offered) gamma.push_back(residual_time(time_constant, v.exploit_time));
  return gamma;
}

std::vector<double> build_switch_diag(std::span<const GameVulnerability> offered) {
  std::vector<double> psi;
  psi.reserve(offered.size());
  for (const auto& v : offered) psi.push_back(v.switch_cost());
  return psi;
}

GameInstance make_instance(std::vector<GameVulnerability> offered, double time_constant,
                           double beta, Variant variant, PenaltyMode penalty_mode) {
  GameInstance inst;
  inst.gamma = build_payoff_diag(offered, time_constant);
  inst.psi = build_switch_diag(offered);
  inst.offered = std::move(offered);
  inst.time_constant = time_constant;
  inst.beta = beta;
  inst.variant = variant;
  inst.penalty_mode = penalty_mode;
  inst.validate();
  return inst;
}

double attacker_payoff(const std::vector<double>& x, const std::vector<double>& gamma,
                       std::size_t j) {
  if (j >= x.size() || x.size() != gamma.size()) {
    throw std::out_of_range("attacker_payoff: index out of range");
  }
  return x[j] * gamma[j];
}

double attacker_payoff_naive(const std::vector<double>& x, const std::vector<double>& t,
                             std::size_t j) {
  if (j >= x.size() || x.size() != t.size()) {
    throw std::out_of_range("attacker_payoff_naive: index out of range");
  }
  if (x[j] > 0.0) return x[j] * t[j];
  return std::numeric_limits<double>::infinity();
}

double reconfig_penalty(const std::vector<double>& x, const std::vector<double>& psi) {
  if (x.size() != psi.size()) {
    throw std::invalid_argument("reconfig_penalty: strategy/cost length mismatch");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    total += psi[j] * x[j] * (1.0 - x[j]);
  }
  return total;
}

double constraint_expression(const std::vector<double>& x, const GameInstance& instance,
                             std::size_t j) {
  const double base = attacker_payoff(x, instance.gamma, j);
  if (instance.variant == Variant::A) return base;
  const double penalty = reconfig_penalty(x, instance.psi);
  const double sign = instance.penalty_mode == PenaltyMode::Literal ? 1.0 : -1.0;
  return instance.beta * base + sign * (1.0 - instance.beta) * penalty;
}

double objective_value(const std::vector<double>& x, const GameInstance& instance) {
  if (x.size() != instance.size()) {
    throw std::invalid_argument("objective_value: strategy length mismatch");
  }
  return raw_objective(x, instance);
}

AttackerResponse attacker_best_response(const std::vector<double>& x,
                                        const GameInstance& instance) {
  if (x.size() != instance.size() || x.empty()) {
    throw std::invalid_argument("attacker_best_response: strategy length mismatch");
  }
  std::size_t best = 0;
  double best_base = x[0] * instance.gamma[0];
  for (std::size_t j = 1; j < x.size(); ++j) {
    const double base = x[j] * instance.gamma[j];
    if (base > best_base) {
      best_base = base;
      best = j;
    }
  }
  AttackerResponse response;
  response.index = best;
  if (instance.variant == Variant::A) {
    response.payoff = best_base;
  } else {
    const double penalty = reconfig_penalty(x, instance.psi);
    const double sign = instance.penalty_mode == PenaltyMode::Literal ? 1.0 : -1.0;
    response.payoff = instance.beta * best_base + sign * (1.0 - instance.beta) * penalty;
  }
  return response;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("project_to_simplex: empty vector");
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = u[0] - 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative += u[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] > candidate) theta = candidate;
  }
  for (double& p : v) p = std::max(p - theta, 0.0);
  return v;
}

Equilibrium make_equilibrium(const GameInstance& instance, std::vector<double> x,
                             SolveMode mode) {
  if (x.size() != instance.size()) {
    throw std::invalid_argument("make_equilibrium: strategy length mismatch");
  }
  if (!is_distribution(x)) {
    throw std::invalid_argument("make_equilibrium: x is not a probability distribution");
  }
  Equilibrium eq;
  eq.attacker_response = attacker_best_response(x, instance);
  eq.value = eq.attacker_response.payoff;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > kSupportEpsilon) eq.support.push_back(j);
  }
  eq.x = std::move(x);
  eq.mode = mode;
  return eq;
}

// ---------------------------------------------------------------------------

Equilibrium solve_hcg_a(const GameInstance& instance) {
  instance.validate();
  if (instance.variant != Variant::A) {
    throw std::invalid_argument("solve_hcg_a: instance is not variant A");
  }
  const std::size_t n = instance.size();
  double inv_sum = 0.0;
  for (double g : instance.gamma) inv_sum += 1.0 / g;
  const double nu = 1.0 / inv_sum;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = nu / instance.gamma[j];
  Equilibrium eq = make_equilibrium(instance, std::move(x), SolveMode::ClosedForm);
  eq.value = nu;  // exact equalizer value; the evaluated max agrees to ulps
  return eq;
}

Equilibrium solve_hcg_a_numeric(const GameInstance& instance, const SolverOptions& options) {
  instance.validate();
  if (instance.variant != Variant::A) {
    throw std::invalid_argument("solve_hcg_a_numeric: instance is not variant A");
  }
  const std::size_t n = instance.size();
  if (n == 1) {
    return make_equilibrium(instance, {1.0}, SolveMode::LocalFromUniform);
  }

  // Geometric step decay down to 1e-6 * eta0 over the budget; polyhedral
  // minimax objectives admit linear convergence under geometrically
  // diminishing steps, which plain 1/sqrt(k) schedules cannot reach at this
  // tolerance.
  const double eta0 = 1.0 / max_element_or(instance.gamma, 1.0);
  DescentResult local =
      subgrad_descent(std::vector<double>(n, 1.0 / static_cast<double>(n)), instance,
                      eta0, options);

  // Weak-duality certificate: for any y on the simplex, min_j y_j gamma_j
  // lower-bounds the game value, so the max-min product spread at the
  // iterate bounds its true suboptimality.
  double lower = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) lower = std::min(lower, local.x[j] * instance.gamma[j]);
  const double certified_gap = local.value - lower;

  Equilibrium eq = make_equilibrium(instance, std::move(local.x), SolveMode::LocalFromUniform);
  if (!(certified_gap <= 1e-4)) {
    throw SolveError("solve_hcg_a_numeric: could not certify 1e-4 optimality within "
                     "max_iterations (duality gap " + std::to_string(certified_gap) + ")",
                     std::move(eq));
  }
  return eq;
}

Equilibrium solve_hcg_b(const GameInstance& instance, const SolverOptions& options) {
  instance.validate();
  if (instance.variant != Variant::B) {
    throw std::invalid_argument("solve_hcg_b: instance is not variant B");
  }
  const std::size_t n = instance.size();
  if (n == 1) {
    const SolveMode mode = options.start_mode == StartMode::Multistart
                               ? SolveMode::MultistartBest
                               : SolveMode::LocalFromUniform;
    return make_equilibrium(instance, {1.0}, mode);
  }

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0 / static_cast<double>(n));
  if (options.start_mode == StartMode::Multistart) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> vertex(n, 0.0);
      vertex[j] = 1.0;
      starts.push_back(std::move(vertex));
    }
    std::mt19937_64 rng(options.seed);
    for (int k = 0; k < options.multistart_count; ++k) {
      std::vector<double> point(n);
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        point[j] = -std::log1p(-next_unit(rng));
        total += point[j];
      }
      for (double& p : point) p /= total;
      starts.push_back(std::move(point));
    }
  }

  const double scale =
      std::max(max_element_or(instance.gamma, 1.0), max_element_or(instance.psi, 0.0));
  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
  bool best_converged = true;
  for (const auto& start : starts) {
    const double at_start = raw_objective(start, instance);
    if (at_start < best) {
      best = at_start;
      best_x = start;
      best_converged = true;
    }
    // The annealed descent tracks the coarse-scale structure but herds every
    // start into the same smoothed basin; the exact-objective subgradient
    // descent refines each start locally. Keep the better of the two.
    for (DescentResult local : {anneal_descent(start, instance, options),
                                subgrad_descent(start, instance, 1.0 / scale, options)}) {
      if (local.value < best) {
        best = local.value;
        best_x = std::move(local.x);
        best_converged = local.converged;
      }
    }
  }

  const SolveMode mode = options.start_mode == StartMode::Multistart
                             ? SolveMode::MultistartBest
                             : SolveMode::LocalFromUniform;
  Equilibrium eq = make_equilibrium(instance, std::move(best_x), mode);
  if (!best_converged) {
    throw SolveError("solve_hcg_b: best descent exhausted its budget while improving",
                     std::move(eq));
  }
  return eq;
}

GridPoint grid_oracle(const GameInstance& instance, double step) {
  instance.validate();
  const std::size_t n = instance.size();
  if (n > 4) {
    throw std::invalid_argument("grid_oracle: only instances with up to 4 strategies");
  }
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("grid_oracle: step must lie in (0,1]");
  }
  const long ticks = std::lround(1.0 / step);

  GridPoint best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> x(n, 0.0);

  auto evaluate = [&]() {
    const double value = raw_objective(x, instance);
    if (value < best.value) {
      best.value = value;
      best.x = x;
    }
  };
  auto enumerate = [&](auto&& self, std::size_t coord, long remaining) -> void {
    if (coord == n - 1) {
      x[coord] = static_cast<double>(remaining) / static_cast<double>(ticks);
      evaluate();
      return;
    }
    for (long k = 0; k <= remaining; ++k) {
      x[coord] = static_cast<double>(k) / static_cast<double>(ticks);
      self(self, coord + 1, remaining - k);
    }
  };
  enumerate(enumerate, 0, ticks);
  return best;
}

// ---------------------------------------------------------------------------

double subset_switch_cost(const std::set<std::string>& from_subset,
                          const std::set<std::string>& to_subset,
                          const std::map<std::string, std::pair<double, double>>& costs) {
  auto lookup = [&costs](const std::string& id) -> const std::pair<double, double>& {
    auto it = costs.find(id);
    if (it == costs.end()) throw std::out_of_range("unknown vulnerability id: " + id);
    return it->second;
  };
  for (const auto& id : from_subset) lookup(id);
  for (const auto& id : to_subset) lookup(id);
  double total = 0.0;
  for (const auto& id : to_subset) {
    if (!from_subset.contains(id)) total += lookup(id).first;  // open cost s+
  }
  for (const auto& id : from_subset) {
    if (!to_subset.contains(id)) total += lookup(id).second;  // patch cost s-
  }
  return total;
}

namespace {

struct SubsetSolve {
  std::vector<std::size_t> indices;
  std::vector<std::string> ids;
  Equilibrium equilibrium;
  std::vector<double> psi;
};

SubsetSolve solve_subset(std::span<const GameVulnerability> eligible,
                         const std::vector<std::size_t>& indices, const SweepParams& params,
                         const SolverOptions& options) {
  SubsetSolve out;
  out.indices = indices;
  std::vector<GameVulnerability> subset;
  subset.reserve(indices.size());
  for (std::size_t idx : indices) {
    subset.push_back(eligible[idx]);
    out.ids.push_back(eligible[idx].id);
  }
  GameInstance inst = make_instance(std::move(subset), params.game.time_constant,
                                    params.game.beta, params.game.variant,
                                    params.game.penalty_mode);
  out.psi = inst.psi;
  out.equilibrium = params.game.variant == Variant::A ? solve_hcg_a(inst)
                                                      : solve_hcg_b(inst, options);
  return out;
}

bool better_row(const SubsetSolve& candidate, const SubsetSolve& incumbent) {
  if (candidate.equilibrium.value != incumbent.equilibrium.value) {
    return candidate.equilibrium.value < incumbent.equilibrium.value;
  }
  return lex_less(candidate.ids, incumbent.ids);
}

}  // namespace

std::vector<SweepRow> cardinality_sweep(std::span<const GameVulnerability> eligible,
                                        std::size_t m_max, const SweepParams& params,
                                        const SolverOptions& options) {
  const std::size_t n = eligible.size();
  if (m_max < 1 || m_max > n) {
    throw std::invalid_argument("cardinality_sweep: m_max out of range");
  }
  constexpr unsigned long long kEnumerationCap = 10000;

  std::vector<SweepRow> rows;
  std::vector<std::size_t> previous_best;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const bool exhaustive = binomial_capped(n, m, kEnumerationCap) <= kEnumerationCap;
    std::optional<SubsetSolve> best;

    auto consider = [&](const std::vector<std::size_t>& indices) {
      SubsetSolve candidate = solve_subset(eligible, indices, params, options);
      if (!best || better_row(candidate, *best)) best = std::move(candidate);
    };

    if (exhaustive) {
      std::vector<std::size_t> indices(m);
      std::iota(indices.begin(), indices.end(), 0);
      while (true) {
        consider(indices);
        // next lexicographic m-combination of {0..n-1}
        std::size_t i = m;
        while (i > 0 && indices[i - 1] == n - m + i - 1) --i;
        if (i == 0) break;
        ++indices[i - 1];
        for (std::size_t k = i; k < m; ++k) indices[k] = indices[k - 1] + 1;
      }
    } else {
      // Greedy growth: extend the previous row's subset by the element that
      // most decreases the solved value.
      for (std::size_t j = 0; j < n; ++j) {
        if (std::find(previous_best.begin(), previous_best.end(), j) != previous_best.end()) {
          continue;
        }
        std::vector<std::size_t> indices = previous_best;
        indices.insert(std::upper_bound(indices.begin(), indices.end(), j), j);
        consider(indices);
      }
    }

    SweepRow row;
    row.variant = params.game.variant;
    row.penalty_mode = params.game.penalty_mode;
    row.kind = params.kind;
    row.m = m;
    row.subset = best->ids;
    row.equilibrium = best->equilibrium;
    row.exhaustive = exhaustive;
    const double nu = best->equilibrium.value;
    if (nu > 0.0) {
      const double gain = intelligence_gain(nu, params.learning_rate);
      const double monitoring =
          monitoring_cost(nu, params.monitoring_factor, static_cast<int>(m));
      const double spend = params.game.variant == Variant::A
                               ? 0.0
                               : reconfig_penalty(best->equilibrium.x, best->psi);
      row.breakdown = game_utility(gain, monitoring, spend, params.game.variant);
    }
    rows.push_back(std::move(row));
    previous_best = best->indices;
  }
  return rows;
}

}  // namespace hcg
