// Game construction and equilibrium solvers.
//
// Variant A (no reconfiguration cost) minimises max_j p_j*gamma_j over the
// probability simplex; the optimum is the equalizer strategy and is available
// in closed form, with an independent projected-subgradient solver as a
// numeric cross-check. Variant B adds the reconfiguration penalty
// x^T Psi (1-x), which makes the objective nonconvex in Literal mode, so it
// is solved by multistart projected gradient descent on an annealed
// log-sum-exp smoothing of the max term. A lattice-enumeration oracle
// validates both solvers on small instances.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "hcg/model.hpp"

namespace hcg {

enum class StartMode { UniformOnly, Multistart };

struct SolverOptions {
  int multistart_count = 32;     // random starts on top of vertices + uniform
  int max_iterations = 5000;     // subgradient iterations / anneal budget
  double convergence_tol = 1e-9;
  double grid_step = 0.01;       // lattice pitch for the grid oracle
  std::uint64_t seed = 0;
  StartMode start_mode = StartMode::Multistart;
};

// Thrown when a descent exhausts its iteration budget while still moving;
// carries the best iterate found so far.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, Equilibrium best)
      : std::runtime_error(what), best_iterate(std::move(best)) {}

  Equilibrium best_iterate;
};

// ---------------------------------------------------------------------------
// Matrix construction

// gamma_j = T - t_j for each offered vulnerability, order preserved.
// Throws std::domain_error unless T exceeds every exploitation time.
std::vector<double> build_payoff_diag(std::span<const GameVulnerability> offered,
                                      double time_constant);

// psi_j = s_j^+ + s_j^- for each offered vulnerability.
std::vector<double> build_switch_diag(std::span<const GameVulnerability> offered);

// Assembles and validates a GameInstance (fills gamma and psi).
GameInstance make_instance(std::vector<GameVulnerability> offered, double time_constant,
                           double beta = 1.0, Variant variant = Variant::A,
                           PenaltyMode penalty_mode = PenaltyMode::Literal);

// ---------------------------------------------------------------------------
// Payoff evaluation

// Attacker's expected payoff p_j * gamma_j for targeting vulnerability j
// (0 when j is unoffered, the dominated case).
double attacker_payoff(const std::vector<double>& x, const std::vector<double>& gamma,
                       std::size_t j);

// The unrevised payoff p_j * t_j, or +infinity when p_j = 0. Kept to
// property-test that the revised payoff induces the same avoid-unoffered
// behaviour.
double attacker_payoff_naive(const std::vector<double>& x, const std::vector<double>& t,
                             std::size_t j);

// Expected per-round reconfiguration cost sum_j psi_j p_j (1 - p_j),
// i.e. x^T Psi (1-x) with diagonal Psi.
double reconfig_penalty(const std::vector<double>& x, const std::vector<double>& psi);

// Per-strategy constraint expression of the active variant at x:
//   A:          p_j gamma_j
//   B literal:  beta p_j gamma_j + (1-beta) x^T Psi (1-x)
//   B signed:   beta p_j gamma_j - (1-beta) x^T Psi (1-x)
double constraint_expression(const std::vector<double>& x, const GameInstance& instance,
                             std::size_t j);

// max_j constraint_expression(x, ., j): the defender's objective at x.
double objective_value(const std::vector<double>& x, const GameInstance& instance);

// Pure best response: argmax_j of the constraint expression, lowest index
// on ties, with the attained value.
AttackerResponse attacker_best_response(const std::vector<double>& x,
                                        const GameInstance& instance);

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

// Wraps a strategy into an Equilibrium: evaluates the objective, the best
// response and the support set. Throws unless x is a valid distribution
// over the offered set.
Equilibrium make_equilibrium(const GameInstance& instance, std::vector<double> x,
                             SolveMode mode);

// ---------------------------------------------------------------------------
// Solvers

// Variant A in closed form: the minimax of max_j p_j gamma_j over the
// simplex is attained where all p_j gamma_j are equal, giving
// nu = 1 / sum_j (1/gamma_j) and p_j = nu / gamma_j.
Equilibrium solve_hcg_a(const GameInstance& instance);

// Variant A by projected subgradient descent with a geometrically
// diminishing step, started from the uniform distribution. Agrees with the
// closed form to well under 1e-4 in value; kept as its independent check.
Equilibrium solve_hcg_a_numeric(const GameInstance& instance,
                                const SolverOptions& options = {});

// Variant B. UniformOnly runs one local descent from the uniform
// distribution; Multistart adds all vertices and seeded random simplex
// points and returns the best local result. Only local optimality is
// guaranteed per start in Literal mode (the penalty is concave).
Equilibrium solve_hcg_b(const GameInstance& instance,
                        const SolverOptions& options = {});

struct GridPoint {
  std::vector<double> x;
  double value = 0.0;
};

// Exhaustive evaluation of the variant objective on the lattice
// { x : p_j = k_j * step, sum p_j = 1 }. Only permitted for |I| <= 4.
GridPoint grid_oracle(const GameInstance& instance, double step);

// ---------------------------------------------------------------------------
// Subset machinery

// Cost to switch configuration subsets:
// sum_{k in to\from} s_k^+  +  sum_{k in from\to} s_k^-.
double subset_switch_cost(const std::set<std::string>& from_subset,
                          const std::set<std::string>& to_subset,
                          const std::map<std::string, std::pair<double, double>>& costs);

struct GameParams {
  double time_constant = 4.0;
  double beta = 0.5;
  Variant variant = Variant::A;
  PenaltyMode penalty_mode = PenaltyMode::Literal;
};

struct SweepParams {
  GameParams game;
  HoneypotKind kind = HoneypotKind::LIH;
  double learning_rate = 0.5;     // lambda, for the per-row breakdown
  double monitoring_factor = 0.5; // alpha
};

// For each m in 1..m_max, solves the game restricted to each candidate
// m-subset of `eligible` and keeps the subset minimising the solved value;
// ties break lexicographically on the id list. Subsets are enumerated
// exhaustively while C(n, m) <= 10000, otherwise grown greedily from the
// previous row's subset (rows flag which search ran).
std::vector<SweepRow> cardinality_sweep(std::span<const GameVulnerability> eligible,
                                        std::size_t m_max, const SweepParams& params,
                                        const SolverOptions& options = {});

}  // namespace hcg
