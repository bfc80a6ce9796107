#include "hcg/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace hcg {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

int rank(Complexity c) {
  switch (c) {
    case Complexity::Low: return 1;
    case Complexity::Medium: return 2;
    case Complexity::High: return 3;
  }
  throw std::logic_error("unreachable complexity value");
}

std::string_view to_string(Complexity c) {
  switch (c) {
    case Complexity::Low: return "low";
    case Complexity::Medium: return "medium";
    case Complexity::High: return "high";
  }
  throw std::logic_error("unreachable complexity value");
}

std::optional<Complexity> parse_complexity(std::string_view text) {
  const std::string t = lower(text);
  if (t == "low") return Complexity::Low;
  if (t == "medium") return Complexity::Medium;
  if (t == "high") return Complexity::High;
  return std::nullopt;
}

std::string_view to_string(AccessVector v) {
  return v == AccessVector::Remote ? "remote" : "local";
}

std::string_view to_string(HoneypotKind k) {
  return k == HoneypotKind::LIH ? "lih" : "hih";
}

std::string_view to_string(Variant v) { return v == Variant::A ? "a" : "b"; }

std::string_view to_string(PenaltyMode m) {
  return m == PenaltyMode::Literal ? "literal" : "signed";
}

std::string_view to_string(SolveMode m) {
  switch (m) {
    case SolveMode::ClosedForm: return "closed-form";
    case SolveMode::LocalFromUniform: return "local-from-uniform";
    case SolveMode::MultistartBest: return "multistart-best";
    case SolveMode::GridOracle: return "grid-oracle";
    case SolveMode::Pinned: return "pinned";
  }
  throw std::logic_error("unreachable solve mode");
}

void VulnerabilityRecord::validate() const {
  if (cve_id.empty()) {
    throw std::invalid_argument("vulnerability record requires a non-empty cve_id");
  }
  if (!(cvss_score >= 0.0 && cvss_score <= 10.0)) {
    throw std::invalid_argument("cvss_score for " + cve_id + " outside [0,10]");
  }
}

void GameVulnerability::validate() const {
  if (id.empty()) {
    throw std::invalid_argument("game vulnerability requires a non-empty id");
  }
  if (!(exploit_time > 0.0)) {
    throw std::invalid_argument("exploit_time for " + id + " must be positive");
  }
  if (!(open_cost >= 0.0) || !(patch_cost >= 0.0)) {
    throw std::invalid_argument("switch costs for " + id + " must be nonnegative");
  }
  if (!(open_cost + patch_cost > 0.0)) {
    throw std::invalid_argument("switch cost sum for " + id + " must be positive");
  }
}

void HoneypotProfile::validate() const {
  if (!(learning_rate > 0.0 && learning_rate < 1.0)) {
    throw std::invalid_argument("learning_rate must lie in (0,1)");
  }
  if (!(monitoring_factor > 0.0 && monitoring_factor < 1.0)) {
    throw std::invalid_argument("monitoring_factor must lie in (0,1)");
  }
  if (!(implementation_cost >= 0.0)) {
    throw std::invalid_argument("implementation_cost must be nonnegative");
  }
  if (kind == HoneypotKind::LIH && max_complexity == Complexity::High) {
    throw std::invalid_argument("a low-interaction honeypot cannot host high-complexity vulnerabilities");
  }
  if (kind == HoneypotKind::HIH && max_complexity != Complexity::High) {
    throw std::invalid_argument("a high-interaction honeypot hosts all complexities (max must be high)");
  }
}

HoneypotProfile HoneypotProfile::make(HoneypotKind kind, double implementation_cost,
                                      double learning_rate, double monitoring_factor) {
  HoneypotProfile p;
  p.kind = kind;
  p.implementation_cost = implementation_cost;
  p.learning_rate = learning_rate;
  p.monitoring_factor = monitoring_factor;
  p.max_complexity = kind == HoneypotKind::LIH ? Complexity::Medium : Complexity::High;
  p.validate();
  return p;
}

double residual_time(double time_constant, double exploit_time) {
  if (!(time_constant > exploit_time)) {
    throw std::domain_error("time constant must exceed the exploitation time");
  }
  return time_constant - exploit_time;
}

void GameInstance::validate() const {
  if (offered.empty()) {
    throw std::invalid_argument("game instance requires at least one offered vulnerability");
  }
  if (gamma.size() != offered.size() || psi.size() != offered.size()) {
    throw std::invalid_argument("gamma/psi length must match the offered set");
  }
  for (const auto& v : offered) {
    v.validate();
    if (!(time_constant > v.exploit_time)) {
      throw std::domain_error("time constant must exceed every exploitation time");
    }
  }
  for (double g : gamma) {
    if (!(g > 0.0)) throw std::invalid_argument("payoff diagonal must be strictly positive");
  }
  for (double s : psi) {
    if (!(s > 0.0)) throw std::invalid_argument("switch-cost diagonal must be strictly positive");
  }
  // The trade-off weight is nominally in (0,1); beta = 1 is accepted and
  // makes variant B coincide with variant A.
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in (0,1]");
  }
}

bool is_distribution(const std::vector<double>& x, double tol) {
  if (x.empty()) return false;
  double sum = 0.0;
  for (double p : x) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

void BudgetContext::validate() const {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");
  if (!(expected_loss >= 0.0)) throw std::invalid_argument("expected loss must be nonnegative");
  lih_profile.validate();
  hih_profile.validate();
}

}  // namespace hcg
