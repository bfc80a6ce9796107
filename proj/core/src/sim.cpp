#include "hcg/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "hcg/solver.hpp"
#include "hcg/text.hpp"

namespace hcg {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

MeanWithSe mean_with_se(const std::vector<double>& samples) {
  MeanWithSe out;
  out.se = kNan;
  if (samples.empty()) return out;
  double sum = 0.0;
  for (double v : samples) sum += v;
  out.mean = sum / static_cast<double>(samples.size());
  if (samples.size() < 2) return out;
  double ss = 0.0;
  for (double v : samples) ss += (v - out.mean) * (v - out.mean);
  const double variance = ss / static_cast<double>(samples.size() - 1);
  out.se = std::sqrt(variance / static_cast<double>(samples.size()));
  return out;
}

// z = (observed - expected)/se, with the zero-variance convention: exact
// agreement scores 0, any deviation at zero se is flagged as infinite.
double z_score(double observed, double expected, double se) {
  if (std::isnan(se)) return kNan;
  if (se == 0.0) {
    return std::abs(observed - expected) < 1e-12
               ? 0.0
               : std::numeric_limits<double>::infinity();
  }
  return (observed - expected) / se;
}

}  // namespace

std::string_view to_string(AttackerPolicy p) {
  switch (p) {
    case AttackerPolicy::BestResponse: return "best-response";
    case AttackerPolicy::EasiestFirst: return "easiest-first";
    case AttackerPolicy::UniformRandom: return "uniform";
  }
  throw std::logic_error("unreachable attacker policy");
}

std::optional<AttackerPolicy> parse_attacker_policy(std::string_view text) {
  if (text == "best-response") return AttackerPolicy::BestResponse;
  if (text == "easiest-first") return AttackerPolicy::EasiestFirst;
  if (text == "uniform") return AttackerPolicy::UniformRandom;
  return std::nullopt;
}

SimulationRun run_rounds(const GameInstance& instance, const std::vector<double>& x,
                         AttackerPolicy policy, std::size_t rounds, std::uint64_t seed) {
  instance.validate();
  if (rounds < 1) throw std::invalid_argument("run_rounds: at least one round required");
  if (x.size() != instance.size() || !is_distribution(x)) {
    throw std::invalid_argument("run_rounds: x is not a distribution over the offered set");
  }

  const std::size_t n = instance.size();
  std::mt19937_64 rng(seed);

  SimulationRun run;
  run.events.reserve(rounds);

  std::vector<bool> previous(n, false);
  std::vector<bool> included(n, false);
  std::vector<double> spends;  // per transition
  std::vector<double> engagements(rounds, 0.0);
  std::vector<std::size_t> attack_counts(n, 0);
  std::vector<std::size_t> include_counts(n, 0);
  double payoff_total = 0.0;
  spends.reserve(rounds > 0 ? rounds - 1 : 0);

  for (std::size_t r = 0; r < rounds; ++r) {
    RoundEvent event;
    event.round_index = r;
    for (std::size_t j = 0; j < n; ++j) {
      included[j] = next_unit(rng) < x[j];
      if (included[j]) {
        event.offered_now.push_back(j);
        ++include_counts[j];
      }
    }

    if (r > 0) {
      for (std::size_t j = 0; j < n; ++j) {
        if (included[j] && !previous[j]) {
          event.opened.push_back(j);
          event.open_spend += instance.offered[j].open_cost;
        } else if (!included[j] && previous[j]) {
          event.patched.push_back(j);
          event.patch_spend += instance.offered[j].patch_cost;
        }
      }
      spends.push_back(event.reconfig_spend());
    }
    previous = included;

    if (!event.offered_now.empty()) {
      std::size_t target = event.offered_now.front();
      switch (policy) {
        case AttackerPolicy::BestResponse:
          for (std::size_t j : event.offered_now) {
            if (x[j] * instance.gamma[j] > x[target] * instance.gamma[target]) target = j;
          }
          break;
        case AttackerPolicy::EasiestFirst:
          for (std::size_t j : event.offered_now) {
            if (instance.offered[j].exploit_time < instance.offered[target].exploit_time) {
              target = j;
            }
          }
          break;
        case AttackerPolicy::UniformRandom: {
          const auto pick = static_cast<std::size_t>(
              next_unit(rng) * static_cast<double>(event.offered_now.size()));
          target = event.offered_now[std::min(pick, event.offered_now.size() - 1)];
          break;
        }
      }
      event.attacked = target;
      event.engagement = instance.offered[target].exploit_time;
      engagements[r] = event.engagement;
      payoff_total += instance.gamma[target];
      ++attack_counts[target];
    }

    run.events.push_back(std::move(event));
  }

  SimulationStats& stats = run.stats;
  stats.rounds = rounds;
  stats.reconfig_spend = mean_with_se(spends);
  stats.engagement = mean_with_se(engagements);
  stats.empirical_value = payoff_total / static_cast<double>(rounds);
  stats.empirical_attack_frequency.assign(n, 0.0);
  stats.include_frequency.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    stats.include_frequency[j] =
        static_cast<double>(include_counts[j]) / static_cast<double>(rounds);
    stats.attacked_rounds += attack_counts[j];
  }
  if (stats.attacked_rounds > 0) {
    for (std::size_t j = 0; j < n; ++j) {
      stats.empirical_attack_frequency[j] = static_cast<double>(attack_counts[j]) /
                                            static_cast<double>(stats.attacked_rounds);
    }
  }
  return run;
}

ValidationReport compare_to_analytic(const SimulationStats& stats,
                                     const GameInstance& instance,
                                     const std::vector<double>& x) {
  if (x.size() != instance.size() || stats.include_frequency.size() != instance.size()) {
    throw std::invalid_argument("compare_to_analytic: dimension mismatch");
  }
  ValidationReport report;

  const double analytic_spend = reconfig_penalty(x, instance.psi);
  report.reconfig_z = z_score(stats.reconfig_spend.mean, analytic_spend,
                              stats.reconfig_spend.se);

  const double rounds = static_cast<double>(stats.rounds);
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const double rate = stats.include_frequency[j];
    const double observed = instance.gamma[j] * rate;
    const double expected = x[j] * instance.gamma[j];
    const double se = instance.gamma[j] * std::sqrt(rate * (1.0 - rate) / rounds);
    report.payoff_z.push_back(z_score(observed, expected, se));
  }

  report.inconclusive = stats.rounds < 30 || std::isnan(stats.reconfig_spend.se);
  auto track = [&report](double z) {
    if (std::isnan(z)) return;
    if (std::isinf(z)) {
      report.flagged = true;
      return;
    }
    report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    if (std::abs(z) > 3.0) report.flagged = true;
  };
  track(report.reconfig_z);
  for (double z : report.payoff_z) track(z);
  return report;
}

std::string write_trace_csv(const GameInstance& instance, std::span<const RoundEvent> events) {
  auto ids = [&instance](const std::vector<std::size_t>& indices) {
    std::vector<std::string> names;
    names.reserve(indices.size());
    for (std::size_t j : indices) names.push_back(instance.offered[j].id);
    return join(names, ";");
  };

  std::string out = "round,offered,opened,patched,attacked,engagement,reconfig_spend\n";
  for (const auto& event : events) {
    out += std::to_string(event.round_index);
    out += ',';
    out += ids(event.offered_now);
    out += ',';
    out += ids(event.opened);
    out += ',';
    out += ids(event.patched);
    out += ',';
    if (event.attacked) out += instance.offered[*event.attacked].id;
    out += ',';
    out += to_short_string(event.engagement);
    out += ',';
    out += to_short_string(event.reconfig_spend());
    out += '\n';
  }
  return out;
}

}  // namespace hcg
