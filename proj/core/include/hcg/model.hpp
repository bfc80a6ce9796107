// Domain types for the honeypot configuration game (HCG): vulnerabilities,
// honeypot profiles, game instances, equilibria and decision reports.
//
// All types are immutable value objects once constructed and can be shared
// freely across threads.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hcg {

// Probabilities at or below this threshold are reported as effectively
// unoffered when summarising a mixed strategy.
inline constexpr double kSupportEpsilon = 1e-3;

// ---------------------------------------------------------------------------
// Enumerations

enum class Complexity { Low, Medium, High };

// Ordinal rank of a CVSS access-complexity level: Low=1, Medium=2, High=3.
int rank(Complexity c);

std::string_view to_string(Complexity c);
std::optional<Complexity> parse_complexity(std::string_view text);  // case-insensitive

enum class AccessVector { Remote, Local };

std::string_view to_string(AccessVector v);

enum class HoneypotKind { LIH, HIH };

std::string_view to_string(HoneypotKind k);

enum class Variant { A, B };  // A: no reconfiguration cost, B: with cost

enum class PenaltyMode { Literal, Signed };

// Pinned marks an equilibrium whose strategy was supplied by the caller
// (regression fixtures) rather than solved.
enum class SolveMode { ClosedForm, LocalFromUniform, MultistartBest, GridOracle, Pinned };

std::string_view to_string(Variant v);
std::string_view to_string(PenaltyMode m);
std::string_view to_string(SolveMode m);

// ---------------------------------------------------------------------------
// Catalog-level records

// A raw vulnerability catalog entry (CVE id plus the CVSS base metrics the
// toolkit consumes).
struct VulnerabilityRecord {
  std::string cve_id;
  double cvss_score = 0.0;  // in [0,10]
  AccessVector access_vector = AccessVector::Remote;
  Complexity complexity = Complexity::Low;
  bool patch_available = false;

  // Throws std::invalid_argument when cve_id is empty or the score is
  // outside [0,10].
  void validate() const;

  friend bool operator==(const VulnerabilityRecord&, const VulnerabilityRecord&) = default;
};

// A game-ready vulnerability: exploitation time t and the open/patch switch
// costs s+ and s-.
struct GameVulnerability {
  std::string id;
  double exploit_time = 1.0;  // t_j
  double open_cost = 0.5;     // s_j^+
  double patch_cost = 0.5;    // s_j^-

  double switch_cost() const { return open_cost + patch_cost; }

  // Requires exploit_time > 0 and open_cost + patch_cost > 0.
  void validate() const;

  friend bool operator==(const GameVulnerability&, const GameVulnerability&) = default;
};

// Operating parameters of a honeypot type. LIH can host vulnerabilities up
// to Medium complexity; HIH hosts all three levels.
struct HoneypotProfile {
  HoneypotKind kind = HoneypotKind::LIH;
  double implementation_cost = 0.0;  // C
  double learning_rate = 0.5;        // lambda, in (0,1)
  double monitoring_factor = 0.5;    // alpha, in (0,1)
  Complexity max_complexity = Complexity::Medium;

  void validate() const;

  // Validated constructor with the kind-appropriate complexity ceiling
  // (LIH -> Medium, HIH -> High).
  static HoneypotProfile make(HoneypotKind kind, double implementation_cost,
                              double learning_rate, double monitoring_factor);
};

// ---------------------------------------------------------------------------
// Game instance

// Residual time gamma_j = T - t_j. Throws std::domain_error unless T > t_j.
double residual_time(double time_constant, double exploit_time);

// One solvable game: the offered set I, time constant T, payoff diagonal
// gamma, switch-cost diagonal psi, trade-off weight beta and the variant
// selector. Construct through hcg::make_instance (solver.hpp), which fills
// the diagonals and checks the invariants.
struct GameInstance {
  std::vector<GameVulnerability> offered;
  double time_constant = 0.0;  // T, strictly above every exploit time
  std::vector<double> gamma;   // gamma_j = T - t_j, all > 0
  std::vector<double> psi;     // psi_j = s_j^+ + s_j^-, all > 0
  double beta = 1.0;           // in (0,1]; only meaningful for variant B
  Variant variant = Variant::A;
  PenaltyMode penalty_mode = PenaltyMode::Literal;

  std::size_t size() const { return offered.size(); }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Solver output

struct AttackerResponse {
  std::size_t index = 0;  // pure best response (lowest index on ties)
  double payoff = 0.0;    // attained constraint value at the defender's x
};

struct Equilibrium {
  std::vector<double> x;  // defender mixed strategy, on the simplex
  double value = 0.0;     // solved game value nu
  AttackerResponse attacker_response;
  std::vector<std::size_t> support;  // { j : x[j] > kSupportEpsilon }
  SolveMode mode = SolveMode::ClosedForm;
};

// True when x is entrywise nonnegative and sums to 1 within tol.
bool is_distribution(const std::vector<double>& x, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Economics

struct UtilityBreakdown {
  double gain = 0.0;           // g, > 0
  double monitoring = 0.0;     // c, > 0
  double reconfig_spend = 0.0; // S, >= 0 and exactly 0 for variant A
  double utility = 0.0;        // U_D = g - c (- S for variant B)
};

struct BudgetContext {
  double budget = 0.0;         // B
  double expected_loss = 0.0;  // L
  HoneypotProfile lih_profile;
  HoneypotProfile hih_profile;

  void validate() const;  // budget >= 0, loss >= 0
};

// Everything the decision tree records for a single honeypot type.
struct PerTypeOutcome {
  double utility = 0.0;  // U value fed into the budget comparison
  UtilityBreakdown breakdown;
  Equilibrium equilibrium;
  std::size_t chosen_m = 0;
  std::vector<std::string> chosen_subset;
};

struct DecisionReport {
  bool invest = false;  // true iff expected loss >= budget
  std::optional<HoneypotKind> chosen_kind;
  std::optional<double> residual_budget;  // B_res, set only when investing
  std::map<HoneypotKind, PerTypeOutcome> per_type;
};

// One row of a cardinality sweep: the best m-subset for a kind/variant and
// the solved game restricted to it.
struct SweepRow {
  Variant variant = Variant::A;
  PenaltyMode penalty_mode = PenaltyMode::Literal;
  HoneypotKind kind = HoneypotKind::LIH;
  std::size_t m = 0;
  std::vector<std::string> subset;  // |subset| = m, ids in offered order
  Equilibrium equilibrium;
  // Unset when the solved value is nonpositive (Signed mode), where the
  // logistic gain/cost functions are undefined.
  std::optional<UtilityBreakdown> breakdown;
  bool exhaustive = true;  // false when the greedy heuristic picked the subset
};

}  // namespace hcg
