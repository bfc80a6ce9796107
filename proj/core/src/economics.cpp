#include "hcg/economics.hpp"

#include <cmath>
#include <stdexcept>

namespace hcg {

double intelligence_gain(double nu, double learning_rate) {
  if (!(nu > 0.0)) {
    throw std::domain_error("intelligence_gain: game value must be positive");
  }
  if (!(learning_rate > 0.0 && learning_rate < 1.0)) {
    throw std::domain_error("intelligence_gain: learning rate must lie in (0,1)");
  }
  return std::exp(1.0 / (1.0 + learning_rate * nu));
}

double monitoring_cost(double nu, double monitoring_factor, int offered_count) {
  if (!(nu > 0.0)) {
    throw std::domain_error("monitoring_cost: game value must be positive");
  }
  if (!(monitoring_factor > 0.0 && monitoring_factor < 1.0)) {
    throw std::domain_error("monitoring_cost: monitoring factor must lie in (0,1)");
  }
  if (offered_count < 1) {
    throw std::domain_error("monitoring_cost: at least one offered vulnerability required");
  }
  return std::exp(-1.0 / (monitoring_factor * offered_count * nu));
}

UtilityBreakdown game_utility(double gain, double monitoring, double reconfig_spend,
                              Variant variant) {
  if (!(gain >= 0.0) || !(monitoring >= 0.0)) {
    throw std::invalid_argument("game_utility: gain and monitoring cost must be nonnegative");
  }
  if (!(reconfig_spend >= 0.0)) {
    throw std::invalid_argument("game_utility: reconfiguration spend must be nonnegative");
  }
  if (variant == Variant::A && reconfig_spend != 0.0) {
    throw std::invalid_argument("game_utility: variant A carries no reconfiguration spend");
  }
  UtilityBreakdown out;
  out.gain = gain;
  out.monitoring = monitoring;
  out.reconfig_spend = reconfig_spend;
  out.utility = variant == Variant::A ? gain - monitoring : gain - monitoring - reconfig_spend;
  return out;
}

std::pair<double, HoneypotKind> residual_budget(double budget, double lih_cost,
                                                double lih_utility, double hih_cost,
                                                double hih_utility) {
  const double lih_residual = budget - lih_cost + lih_utility;
  const double hih_residual = budget - hih_cost + hih_utility;
  if (lih_residual >= hih_residual) return {lih_residual, HoneypotKind::LIH};
  return {hih_residual, HoneypotKind::HIH};
}

DecisionReport invest_decision(const BudgetContext& context,
                               const std::map<HoneypotKind, double>& per_type_utility) {
  context.validate();
  DecisionReport report;
  report.invest = context.expected_loss >= context.budget;
  if (!report.invest) return report;

  const auto lih = per_type_utility.find(HoneypotKind::LIH);
  const auto hih = per_type_utility.find(HoneypotKind::HIH);
  if (lih == per_type_utility.end() || hih == per_type_utility.end()) {
    throw std::invalid_argument("invest_decision: utilities for both honeypot kinds required");
  }
  auto [residual, kind] =
      residual_budget(context.budget, context.lih_profile.implementation_cost, lih->second,
                      context.hih_profile.implementation_cost, hih->second);
  report.residual_budget = residual;
  report.chosen_kind = kind;
  return report;
}

EvaluationResult evaluate_configuration(std::span<const GameVulnerability> eligible,
                                        const HoneypotProfile& profile,
                                        const GameParams& params,
                                        const SolverOptions& options,
                                        const std::optional<PinnedPoint>& pinned) {
  profile.validate();
  GameInstance inst =
      make_instance(std::vector<GameVulnerability>(eligible.begin(), eligible.end()),
                    params.time_constant, params.beta, params.variant, params.penalty_mode);

  Equilibrium eq;
  if (pinned) {
    eq = make_equilibrium(inst, pinned->x, SolveMode::Pinned);
  } else if (params.variant == Variant::A) {
    eq = solve_hcg_a(inst);
  } else {
    eq = solve_hcg_b(inst, options);
  }

  const double nu = pinned && pinned->value ? *pinned->value : eq.value;
  const double gain = intelligence_gain(nu, profile.learning_rate);
  const double monitoring =
      monitoring_cost(nu, profile.monitoring_factor, static_cast<int>(inst.size()));
  const double spend =
      params.variant == Variant::A ? 0.0 : reconfig_penalty(eq.x, inst.psi);

  EvaluationResult out;
  out.breakdown = game_utility(gain, monitoring, spend, params.variant);
  out.equilibrium = std::move(eq);
  return out;
}

}  // namespace hcg
