// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerance in code; several also assert a
// wall-clock budget, so run this on an optimised build.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../fixtures.hpp"
#include "hcg/economics.hpp"
#include "hcg/ingest.hpp"
#include "hcg/sim.hpp"
#include "hcg/solver.hpp"

using namespace hcg;
using Clock = std::chrono::steady_clock;

namespace {

struct Ctx {
  std::vector<std::string> errors;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) errors.push_back(what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

int g_failures = 0;

void run_criterion(int id, const std::string& label, const std::function<void(Ctx&)>& fn) {
  Ctx ctx;
  try {
    fn(ctx);
  } catch (const std::exception& e) {
    ctx.errors.push_back(std::string("exception: ") + e.what());
  }
  const bool pass = ctx.errors.empty();
  if (!pass) ++g_failures;
  std::printf("[%2d/10] %s  %s\n", id, pass ? "PASS" : "FAIL", label.c_str());
  for (const auto& note : ctx.notes) std::printf("        note: %s\n", note.c_str());
  for (const auto& err : ctx.errors) std::printf("        fail: %s\n", err.c_str());
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

GameInstance worked_a() { return make_instance(fixtures::worked_vulns(), 4.0); }

GameInstance worked_b(PenaltyMode mode = PenaltyMode::Literal) {
  return make_instance(fixtures::worked_vulns(), 4.0, 0.5, Variant::B, mode);
}

std::vector<GameVulnerability> random_vulns(std::mt19937_64& rng, std::size_t n) {
  std::vector<GameVulnerability> vulns;
  for (std::size_t i = 0; i < n; ++i) {
    vulns.push_back(
        fixtures::make_vuln("r" + std::to_string(i), 1.0 + static_cast<double>(rng() % 3)));
  }
  return vulns;
}

// 1. Closed-form equilibrium of the three-strategy instance.
void criterion_closed_form(Ctx& ctx) {
  const auto start = Clock::now();
  const Equilibrium eq = solve_hcg_a(worked_a());
  const double elapsed = ms_since(start);

  ctx.check(std::abs(eq.value - 0.545) <= 1e-3, "value off: " + std::to_string(eq.value));
  const std::vector<double> expected{0.273, 0.182, 0.545};
  for (std::size_t j = 0; j < 3; ++j) {
    ctx.check(std::abs(eq.x[j] - expected[j]) <= 1e-3,
              "x[" + std::to_string(j) + "] off: " + std::to_string(eq.x[j]));
  }
  ctx.check(elapsed < 1.0, "solve took " + std::to_string(elapsed) + " ms (budget 1 ms)");
}

// 2. Gain / monitoring cost / utility at the variant-A worked point.
void criterion_economics(Ctx& ctx) {
  const double gain = intelligence_gain(0.545, 0.6);
  const double cost = monitoring_cost(0.545, 0.7, 3);
  const double utility = game_utility(gain, cost, 0.0, Variant::A).utility;
  ctx.check(std::abs(gain - 2.124) <= 1e-2, "g off: " + std::to_string(gain));
  ctx.check(std::abs(cost - 0.418) <= 1e-2, "c off: " + std::to_string(cost));
  ctx.check(std::abs(utility - 1.706) <= 1e-2, "U_D off: " + std::to_string(utility));
}

// 3. Pinned-point regression for the variant-B worked example.
void criterion_pinned_point(Ctx& ctx) {
  const std::vector<double> x{0.332, 0.304, 0.364};
  const auto inst = worked_b();
  const double penalty = reconfig_penalty(x, inst.psi);
  ctx.check(std::abs(penalty - 1.3496) <= 1e-3, "penalty off: " + std::to_string(penalty));

  const double pinned_nu = 0.562;
  const double gain = intelligence_gain(pinned_nu, 0.6);
  const double cost = monitoring_cost(pinned_nu, 0.7, 3);
  const double utility = game_utility(gain, cost, penalty, Variant::B).utility;
  ctx.check(std::abs(gain - 2.112) <= 1e-2, "g off: " + std::to_string(gain));
  ctx.check(std::abs(cost - 0.429) <= 1e-2, "c off: " + std::to_string(cost));
  ctx.check(std::abs(utility - 0.33) <= 1e-2, "U_D off: " + std::to_string(utility));
}

// 4. Variant-B literal global optimum against the 0.01-grid oracle.
void criterion_global_optimum(Ctx& ctx) {
  const auto inst = worked_b();
  const GridPoint oracle = grid_oracle(inst, 0.01);
  ctx.check(std::abs(oracle.value - 0.5) <= 1e-12,
            "oracle value off: " + std::to_string(oracle.value));
  ctx.check(oracle.x == std::vector<double>({0.0, 0.0, 1.0}), "oracle optimum not at e3");

  double scale = 0.0;
  for (double g : inst.gamma) scale = std::max(scale, g);
  for (double s : inst.psi) scale = std::max(scale, s);
  const double tolerance = 2.0 * 0.01 * scale;

  const Equilibrium solved = solve_hcg_b(inst);
  ctx.check(std::abs(solved.value - oracle.value) <= tolerance,
            "multistart value " + std::to_string(solved.value) + " vs oracle " +
                std::to_string(oracle.value));
  ctx.note("reported optimum stays at the vertex; the interior point of the original "
           "case study is not a global optimum of the literal objective");
}

// 5. Closed form vs projected subgradient over 200 random instances.
void criterion_numeric_agreement(Ctx& ctx) {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260810);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto inst = make_instance(random_vulns(rng, n), 4.0);
    const double exact = solve_hcg_a(inst).value;
    const double numeric = solve_hcg_a_numeric(inst).value;
    worst = std::max(worst, std::abs(exact - numeric));
  }
  const double elapsed = ms_since(start);
  ctx.check(worst <= 1e-4, "worst gap " + std::to_string(worst) + " above 1e-4");
  ctx.check(elapsed < 10000.0, "took " + std::to_string(elapsed) + " ms (budget 10 s)");
  ctx.note("worst |closed - numeric| = " + std::to_string(worst));
}

// 6. Case-study sweep: maximal utility and value at m = 6 for the LIH set.
void criterion_case_study_sweep(Ctx& ctx) {
  SweepParams params;
  params.game.time_constant = 4.0;
  params.game.variant = Variant::A;
  params.kind = HoneypotKind::LIH;
  params.learning_rate = 0.4;     // LIH lambda
  params.monitoring_factor = 0.5; // LIH alpha

  const auto rows = cardinality_sweep(fixtures::lih_case_vulns(), 6, params);
  ctx.check(rows.size() == 6, "expected 6 rows");

  std::size_t best_m = 0;
  double best_utility = -1e300;
  for (const auto& row : rows) {
    if (row.breakdown && row.breakdown->utility > best_utility) {
      best_utility = row.breakdown->utility;
      best_m = row.m;
    }
  }
  ctx.check(best_m == 6, "max U_D at m=" + std::to_string(best_m) + ", expected 6");
  ctx.check(std::abs(rows.back().equilibrium.value - 0.375) <= 1e-6,
            "nu(m=6) = " + std::to_string(rows.back().equilibrium.value));

  // The remaining reference ordinals (always-negative HIH utility, variant-b
  // optimum at HIH m=2, the 134%/62% deltas) are not derivable from the
  // implemented equations; the sweep command prints a conformance note
  // recording this side by side with its own values.
  if (const char* cli = std::getenv("HCG_CLI")) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hcg-acceptance";
    fs::create_directories(dir);
    const fs::path catalog = dir / "catalog.csv";
    std::ofstream(catalog, std::ios::binary) << fixtures::kCatalogCsv;
    const std::string command = std::string(cli) + " sweep --catalog " + catalog.string() +
                                " --honeypot lih --variant a 2>&1 >/dev/null";
    std::string captured;
    if (FILE* pipe = popen(command.c_str(), "r")) {
      char buffer[2048];
      while (std::size_t got = fread(buffer, 1, sizeof(buffer), pipe)) {
        captured.append(buffer, got);
      }
      pclose(pipe);
    }
    ctx.check(captured.find("conformance note") != std::string::npos,
              "sweep command did not print the conformance note");
    std::error_code ec;
    fs::remove_all(dir, ec);
  } else {
    ctx.note("HCG_CLI unset; conformance-note emission checked in the CLI suite");
  }
}

// 7. Empirical validation of the expected reconfiguration spend.
void criterion_simulation(Ctx& ctx) {
  const auto start = Clock::now();
  const auto inst = worked_b();
  const std::vector<double> x{0.332, 0.304, 0.364};
  const auto run = run_rounds(inst, x, AttackerPolicy::BestResponse, 100000, 12345);
  const double analytic = reconfig_penalty(x, inst.psi);

  ctx.check(std::abs(analytic - 1.3496) <= 1e-3, "analytic penalty drifted");
  const double deviation = std::abs(run.stats.reconfig_spend.mean - analytic);
  ctx.check(deviation <= 3.0 * run.stats.reconfig_spend.se,
            "mean spend " + std::to_string(run.stats.reconfig_spend.mean) + " versus " +
                std::to_string(analytic) + " exceeds 3 standard errors");

  const auto replay = run_rounds(inst, x, AttackerPolicy::BestResponse, 100000, 12345);
  ctx.check(write_trace_csv(inst, run.events) == write_trace_csv(inst, replay.events),
            "fixed seed did not reproduce the trace byte-identically");

  const double elapsed = ms_since(start);
  ctx.check(elapsed < 5000.0, "took " + std::to_string(elapsed) + " ms (budget 5 s)");
  ctx.note("mean spend " + std::to_string(run.stats.reconfig_spend.mean) + " (se " +
           std::to_string(run.stats.reconfig_spend.se) + ")");
}

// 8. Cross-cutting invariant suites.
void criterion_invariants(Ctx& ctx) {
  std::mt19937_64 rng(4711);

  // simplex validity + equalizer property on closed-form output
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = make_instance(random_vulns(rng, 1 + rng() % 10), 4.0);
    const auto eq = solve_hcg_a(inst);
    ctx.check(is_distribution(eq.x, 1e-9), "closed-form x not a distribution");
    for (std::size_t j = 0; j < inst.size(); ++j) {
      ctx.check(std::abs(eq.x[j] * inst.gamma[j] - eq.value) < 1e-9,
                "equalizer violated on the support");
    }
    if (!ctx.errors.empty()) return;  // avoid error spam
  }

  // strict decrease of nu over 100 random nested pairs
  for (int trial = 0; trial < 100; ++trial) {
    auto vulns = random_vulns(rng, 1 + rng() % 9);
    const double small = solve_hcg_a(make_instance(vulns, 4.0)).value;
    vulns.push_back(fixtures::make_vuln("x", 1.0 + static_cast<double>(rng() % 3)));
    const double large = solve_hcg_a(make_instance(vulns, 4.0)).value;
    ctx.check(large < small, "value did not strictly decrease when the set grew");
    if (!ctx.errors.empty()) return;
  }

  // literal-mode nonnegativity (solver output and random feasible points)
  for (int trial = 0; trial < 25; ++trial) {
    const auto inst = make_instance(random_vulns(rng, 1 + rng() % 5), 4.0, 0.5, Variant::B);
    ctx.check(solve_hcg_b(inst).value >= 0.0, "literal solve value went negative");
    std::vector<double> x(inst.size());
    double total = 0.0;
    for (double& p : x) {
      p = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 1e-12;
      total += p;
    }
    for (double& p : x) p /= total;
    ctx.check(objective_value(x, inst) >= 0.0, "literal objective went negative");
    if (!ctx.errors.empty()) return;
  }

  // penalty bounds with vertex zeros
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<double> psi(n);
    double psi_sum = 0.0;
    for (double& s : psi) {
      s = 1.0 + static_cast<double>(rng() % 3);
      psi_sum += s;
    }
    std::vector<double> x(n);
    double total = 0.0;
    for (double& p : x) {
      p = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      total += p;
    }
    for (double& p : x) p /= total;
    const double penalty = reconfig_penalty(x, psi);
    ctx.check(penalty >= 0.0 && penalty <= psi_sum / 4.0 + 1e-12, "penalty out of bounds");
    std::vector<double> vertex(n, 0.0);
    vertex[rng() % n] = 1.0;
    ctx.check(reconfig_penalty(vertex, psi) == 0.0, "vertex penalty nonzero");
    if (!ctx.errors.empty()) return;
  }

  // monotonicity of g (decreasing) and c (increasing) on a nu grid
  double previous_gain = 1e300;
  double previous_cost = -1e300;
  for (double nu = 0.05; nu <= 4.0; nu += 0.05) {
    const double g = intelligence_gain(nu, 0.6);
    const double c = monitoring_cost(nu, 0.7, 3);
    ctx.check(g < previous_gain, "gain not strictly decreasing in nu");
    ctx.check(c > previous_cost, "monitoring cost not strictly increasing in nu");
    previous_gain = g;
    previous_cost = c;
  }
}

// 9. Scalability of the closed form at n = 1000.
void criterion_scalability(Ctx& ctx) {
  std::mt19937_64 rng(1000);
  const auto vulns = random_vulns(rng, 1000);
  const auto built = Clock::now();
  const auto inst = make_instance(vulns, 4.0);
  const auto start = Clock::now();
  const Equilibrium eq = solve_hcg_a(inst);
  const double elapsed = ms_since(start);
  (void)built;

  ctx.check(elapsed < 100.0, "solve took " + std::to_string(elapsed) + " ms (budget 100 ms)");
  ctx.check(is_distribution(eq.x, 1e-9), "x not a distribution at n=1000");

  std::size_t tiny = 0;
  for (double p : eq.x) {
    if (p < 0.001) ++tiny;
  }
  ctx.note("entries with p < 0.001: " + std::to_string(tiny) + " of 1000 (near-uniform "
           "tiny supports at scale; count is run-specific by construction)");
  ctx.check(eq.support.size() + tiny <= 1000, "support accounting inconsistent");
}

// 10. Ingestion fixtures, eligibility counts and the CSV round-trip.
void criterion_ingestion(Ctx& ctx) {
  const Catalog catalog = parse_catalog_csv(fixtures::kCatalogCsv, "fixture");
  ctx.check(catalog.records.size() == 7, "fixture should parse to 7 records");

  const auto lih = HoneypotProfile::make(HoneypotKind::LIH, 2.0, 0.4, 0.5);
  const auto hih = HoneypotProfile::make(HoneypotKind::HIH, 5.0, 0.6, 0.7);
  ctx.check(filter_candidates(catalog, lih).size() == 6, "LIH-eligible must be 6");
  ctx.check(filter_candidates(catalog, hih).size() == 7, "HIH-eligible must be 7");

  const Catalog reparsed = parse_catalog_csv(write_catalog_csv(catalog), "fixture");
  ctx.check(catalog.records == reparsed.records, "CSV round-trip not lossless");
}

}  // namespace

int main() {
  std::printf("acceptance suite: honeypot configuration game toolkit\n");
  run_criterion(1, "closed-form equilibrium of the worked instance", criterion_closed_form);
  run_criterion(2, "gain/cost/utility at the variant-A worked point", criterion_economics);
  run_criterion(3, "variant-B pinned-point regression", criterion_pinned_point);
  run_criterion(4, "variant-B literal optimum matches the grid oracle", criterion_global_optimum);
  run_criterion(5, "closed form vs numeric solver on 200 random instances",
                criterion_numeric_agreement);
  run_criterion(6, "case-study sweep peaks at m=6 with nu=0.375", criterion_case_study_sweep);
  run_criterion(7, "simulated reconfiguration spend matches the analytic penalty",
                criterion_simulation);
  run_criterion(8, "invariant suites (simplex, equalizer, monotonicity, bounds)",
                criterion_invariants);
  run_criterion(9, "closed form solves n=1000 under 100 ms", criterion_scalability);
  run_criterion(10, "ingestion eligibility and CSV round-trip", criterion_ingestion);

  if (g_failures == 0) {
    std::printf("RESULT: 10/10 criteria passed\n");
  } else {
    std::printf("RESULT: %d/10 criteria FAILED\n", g_failures);
  }
  return g_failures;
}
