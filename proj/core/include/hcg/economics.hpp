// Converts solved game values into defender utilities and applies the
// honeypot investment decision tree.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hcg/model.hpp"
#include "hcg/solver.hpp"

namespace hcg {

// Cyber-threat-intelligence gain g = exp(1 / (1 + lambda * nu)).
// Strictly decreasing in nu and lambda; 1 < g <= e.
double intelligence_gain(double nu, double learning_rate);

// Monitoring cost c = exp(-1 / (alpha * m * nu)), with m the number of
// offered vulnerabilities. Strictly increasing in nu, alpha and m; 0 < c < 1.
double monitoring_cost(double nu, double monitoring_factor, int offered_count);

// Assembles the utility breakdown: U_D = g - c for variant A and
// U_D = g - c - S for variant B. Variant A requires S = 0.
UtilityBreakdown game_utility(double gain, double monitoring, double reconfig_spend,
                              Variant variant);

// Residual budget B_res = max(B - C_l + U_l, B - C_h + U_h) and the kind
// attaining it; ties resolve to LIH.
std::pair<double, HoneypotKind> residual_budget(double budget, double lih_cost,
                                                double lih_utility, double hih_cost,
                                                double hih_utility);

// Investment decision: invest iff expected loss >= budget (ties invest).
// When investing, both kinds must be present in per_type_utility and the
// report carries the residual budget and chosen kind. per_type detail is
// left for the caller to attach.
DecisionReport invest_decision(const BudgetContext& context,
                               const std::map<HoneypotKind, double>& per_type_utility);

// A caller-supplied strategy for regression fixtures; when `value` is set it
// overrides the solved game value fed into the gain/cost functions.
struct PinnedPoint {
  std::vector<double> x;
  std::optional<double> value;
};

struct EvaluationResult {
  Equilibrium equilibrium;
  UtilityBreakdown breakdown;
};

// The end-to-end configuration evaluation: solve for x (or adopt the pinned
// point), determine the attacker's best response, then compute nu, the
// reconfiguration spend x^T Psi (1-x) at the optimum, and U_D.
EvaluationResult evaluate_configuration(std::span<const GameVulnerability> eligible,
                                        const HoneypotProfile& profile,
                                        const GameParams& params,
                                        const SolverOptions& options = {},
                                        const std::optional<PinnedPoint>& pinned = {});

}  // namespace hcg
