// Monte Carlo engine for the repeated configuration game: per-round
// Bernoulli sampling of the offered set, attacker response, reconfiguration
// accounting and statistical validation against the analytic penalty.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcg/model.hpp"

namespace hcg {

enum class AttackerPolicy { BestResponse, EasiestFirst, UniformRandom };

std::string_view to_string(AttackerPolicy p);
std::optional<AttackerPolicy> parse_attacker_policy(std::string_view text);

struct RoundEvent {
  std::size_t round_index = 0;
  std::vector<std::size_t> offered_now;  // sampled configuration
  std::vector<std::size_t> opened;       // entered vs the previous round
  std::vector<std::size_t> patched;      // left vs the previous round
  double open_spend = 0.0;               // sum of s+ over `opened`
  double patch_spend = 0.0;              // sum of s- over `patched`
  std::optional<std::size_t> attacked;   // absent on idle rounds
  double engagement = 0.0;               // t of the attacked vulnerability

  double reconfig_spend() const { return open_spend + patch_spend; }
};

struct MeanWithSe {
  double mean = 0.0;
  double se = 0.0;  // NaN when fewer than two samples exist
};

struct SimulationStats {
  std::size_t rounds = 0;
  std::size_t attacked_rounds = 0;
  MeanWithSe reconfig_spend;  // averaged over the rounds-1 transitions
  MeanWithSe engagement;      // averaged over all rounds (idle rounds count 0)
  std::vector<double> empirical_attack_frequency;  // sums to 1 given any attack
  std::vector<double> include_frequency;           // per-vulnerability offer rate
  double empirical_value = 0.0;  // mean realized attacker payoff per round
};

struct SimulationRun {
  std::vector<RoundEvent> events;
  SimulationStats stats;
};

// Plays `rounds` independent rounds: each vulnerability j is included with
// probability x[j] (independent Bernoulli draws); transitions between
// consecutive rounds charge s- per patched and s+ per opened vulnerability;
// the policy picks the attacked vulnerability from the round's included set
// (rounds with an empty set record no attack). Identical inputs and seed
// reproduce the event list exactly.
SimulationRun run_rounds(const GameInstance& instance, const std::vector<double>& x,
                         AttackerPolicy policy, std::size_t rounds, std::uint64_t seed);

struct ValidationReport {
  double reconfig_z = 0.0;          // observed spend vs sum psi_j p_j (1-p_j)
  std::vector<double> payoff_z;     // per-vulnerability payoff vs p_j gamma_j
  double max_abs_z = 0.0;
  bool flagged = false;       // any finite |z| above 3
  bool inconclusive = false;  // too few rounds for meaningful standard errors
};

// Z-scores of the simulated statistics against their analytic expectations
// under the independence model.
ValidationReport compare_to_analytic(const SimulationStats& stats,
                                     const GameInstance& instance,
                                     const std::vector<double>& x);

// Event trace export:
// round,offered,opened,patched,attacked,engagement,reconfig_spend
// with index sets rendered as ';'-joined vulnerability ids.
std::string write_trace_csv(const GameInstance& instance, std::span<const RoundEvent> events);

}  // namespace hcg
