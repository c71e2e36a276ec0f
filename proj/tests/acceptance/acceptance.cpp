// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and fixture constants are pinned below.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "hemsim/attack.hpp"
#include "hemsim/experiment.hpp"
#include "hemsim/resilience.hpp"
#include "hemsim/schedulers.hpp"
#include "support/digest.hpp"
#include "support/instances.hpp"

using namespace hemsim;
namespace fs = std::filesystem;

namespace {

// Criterion 1
constexpr std::uint64_t kInstanceSeed = 1;
constexpr int kInstances = 50;
constexpr int kMaxFlexible = 3;
constexpr std::uint64_t kRunSeeds = 10;
constexpr double kMinExactShare = 0.90;
constexpr double kMaxGap = 0.02;
constexpr double kMaxSeconds = 60.0;
// Criteria 5 and 7
constexpr std::uint64_t kAttackSeed = 5;
constexpr int kAttacks = 20;
constexpr std::uint64_t kFeasibilitySeed = 7;
constexpr int kFeasibilityRuns = 1000;
// Criterion 6: SHA-256 over the sorted (name, size, content) records of the
// attack artifacts produced by data/experiment_oracle_small.yaml.
constexpr const char* kPinnedDigest = "5ddf0fe811da6b69829318c62b0c7b2f95340a7a5c9a9709cc18a64266f4cab5";
// Criterion 8
const char* kWinterPeakLower = "lower:10.1@7-10,18-19";
const Percent kMinDailyRI{90};

const fs::path kData = HEMSIM_DATA_DIR;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename F>
void guarded(int id, const char* name, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

OptimizerSelection select(OptimizerKind kind, std::uint64_t seed = 1) {
  OptimizerSelection s;
  s.kind = kind;
  return s.with_seed(seed);
}

void oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(kInstanceSeed);
  int runs = 0, exact_ga = 0, exact_hsa = 0;
  double worst_ga = 0, worst_hsa = 0;
  for (int i = 0; i < kInstances; ++i) {
    const auto inst = hemsim::testing::random_instance(gen, kMaxFlexible);
    const Money opt = brute_force_optimize(inst.scenario, inst.tariff).cost.total;
    for (std::uint64_t seed = 1; seed <= kRunSeeds; ++seed) {
      GAParams ga;
      ga.seed = seed;
      HSAParams hsa;
      hsa.seed = seed;
      const Money g = ga_optimize(inst.scenario, inst.tariff, ga).cost.total;
      const Money h = hsa_optimize(inst.scenario, inst.tariff, hsa).cost.total;
      ++runs;
      exact_ga += g == opt;
      exact_hsa += h == opt;
      worst_ga = std::max(worst_ga, static_cast<double>((g - opt).units) / static_cast<double>(opt.units));
      worst_hsa = std::max(worst_hsa, static_cast<double>((h - opt).units) / static_cast<double>(opt.units));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double share_ga = static_cast<double>(exact_ga) / runs;
  const double share_hsa = static_cast<double>(exact_hsa) / runs;
  const bool pass = share_ga >= kMinExactShare && share_hsa >= kMinExactShare && worst_ga <= kMaxGap &&
                    worst_hsa <= kMaxGap && secs <= kMaxSeconds;
  report(1, "oracle equivalence", pass,
         fmt("GA exact %.1f%%, HSA exact %.1f%% of %.0f runs each", 100 * share_ga, 100 * share_hsa, runs) +
             fmt("; worst gap GA %.3f%%, HSA %.3f%%", 100 * worst_ga, 100 * worst_hsa) + fmt("; %.1f s", secs));
}

void fig3_direction() {
  const auto s = make_table1_scenario();
  int beaten = 0, total = 0;
  std::string detail;
  for (Season season : {Season::Summer, Season::Winter}) {
    const auto tariff = make_default_tariff(season);
    const Money base = baseline_result(s, tariff).cost.total;
    Money worst{};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GAParams ga;
      ga.seed = seed;
      HSAParams hsa;
      hsa.seed = seed;
      for (Money c : {ga_optimize(s, tariff, ga).cost.total, hsa_optimize(s, tariff, hsa).cost.total}) {
        ++total;
        beaten += c < base;
        worst = std::max(worst, c);
      }
    }
    if (!detail.empty()) detail += "; ";
    detail += std::string(to_string(season)) + " baseline " + base.to_cents_string() + " worst optimized " +
              worst.to_cents_string();
  }
  report(2, "heuristics beat the baseline", beaten == total,
         std::to_string(beaten) + "/" + std::to_string(total) + " runs below baseline; " + detail);
}

void ri_exactness() {
  int ok = 0, n = 0;
  std::mt19937_64 gen(3);
  for (int i = 0; i < 10000; ++i) {
    const Money c{1 + static_cast<std::int64_t>(gen() % 10'000'000'000LL)};
    ok += resilience_index(c, c) == Percent(100);
    ok += resilience_index(c * 2, c) == Percent(0);
    ok += resilience_index(Money{}, c) == Percent(0);
    ok += resilience_index(c * 3, c) == Percent(-100);
    n += 4;
  }
  report(3, "resilience index exactness", ok == n, std::to_string(ok) + "/" + std::to_string(n) + " exact identities");
}

void scale_immunity() {
  std::vector<std::pair<std::string, hemsim::testing::Instance>> cases;
  const auto t1 = make_table1_scenario();
  std::mt19937_64 gen(11);
  for (int i = 0; i < 5; ++i) cases.emplace_back("random " + std::to_string(i), hemsim::testing::random_instance(gen));
  int checked = 0, ok = 0;
  for (std::int64_t k : {2, 3, 10}) {
    const std::vector<AttackSpec> attack{ScaleAttack{Factor(k), std::nullopt}};
    auto check = [&](const HouseholdScenario& s, const TariffDay& t, OptimizerKind kind) {
      const auto r = run_experiment(s, t, attack, select(kind));
      ++checked;
      ok += r.attacked.schedule == r.clean.schedule && r.ri_total == Percent(100) &&
            r.attacked.best_cost_history.back() == r.clean.best_cost_history.back() * k;
    };
    for (const auto& [name, inst] : cases) {
      for (auto kind : {OptimizerKind::GA, OptimizerKind::HSA, OptimizerKind::Oracle}) check(inst.scenario, inst.tariff, kind);
    }
    for (Season season : {Season::Summer, Season::Winter}) {
      for (auto kind : {OptimizerKind::GA, OptimizerKind::HSA}) check(t1, make_default_tariff(season), kind);
    }
  }
  report(4, "scale-attack immunity", ok == checked,
         std::to_string(ok) + "/" + std::to_string(checked) + " experiments with identical schedules and RI 100");
}

AttackSpec random_attack(std::mt19937_64& gen) {
  auto random_slots = [&](int count, Activation exclude) {
    Activation out;
    while (static_cast<int>(out.count()) < count) {
      const auto t = static_cast<std::size_t>(gen() % kSlotsPerDay);
      if (!exclude.test(t)) out.set(t);
    }
    return out;
  };
  switch (gen() % 3) {
    case 0: return PeakLowerAttack{Price{10 + static_cast<std::int64_t>(gen() % 200)}, random_slots(1 + gen() % 8, {})};
    case 1: {
      const Activation from = random_slots(1 + static_cast<int>(gen() % 6), {});
      return PeakShiftAttack{from, random_slots(static_cast<int>(from.count()), from)};
    }
    default: return DelayAttack{1 + static_cast<int>(gen() % 23)};
  }
}

void oracle_harm_bound() {
  std::mt19937_64 gen(kAttackSeed);
  int ok = 0;
  Percent lowest{100};
  for (int i = 0; i < kAttacks; ++i) {
    const auto inst = hemsim::testing::random_instance(gen, kMaxFlexible);
    const AttackSpec attack = random_attack(gen);
    const auto r = run_experiment(inst.scenario, inst.tariff, {attack}, select(OptimizerKind::Oracle));
    ok += r.attacked.cost.total >= r.clean.cost.total && r.ri_total <= Percent(100);
    lowest = std::min(lowest, r.ri_total);
  }
  report(5, "oracle attack-harm bound", ok == kAttacks,
         std::to_string(ok) + "/" + std::to_string(kAttacks) + " attacks with C_A >= C_O and RI <= 100; lowest RI " +
             format_percent(lowest));
}

bool run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::printf("  cli exit %d: %s", code, err.str().c_str());
  return code == 0;
}

void determinism() {
  const fs::path root = fs::temp_directory_path() / "hemsim_acceptance";
  fs::remove_all(root);
  bool identical = true;
  int configs = 0;
  const std::vector<std::pair<std::string, std::string>> jobs{
      {"optimize", "experiment_fig3.yaml"},
      {"attack", "experiment_attack_winter.yaml"},
      {"attack", "experiment_oracle_small.yaml"},
      {"oracle", "experiment_oracle_small.yaml"},
  };
  std::string digest;
  for (const auto& [cmd, cfg] : jobs) {
    const fs::path a = root / (cmd + "_" + cfg + "_a");
    const fs::path b = root / (cmd + "_" + cfg + "_b");
    if (!run_cli({cmd, (kData / cfg).string(), "--out-dir", a.string()}) ||
        !run_cli({cmd, (kData / cfg).string(), "--out-dir", b.string()})) {
      identical = false;
      continue;
    }
    ++configs;
    identical = identical && hemsim::testing::read_tree(a) == hemsim::testing::read_tree(b);
    if (cmd == "attack" && cfg == "experiment_oracle_small.yaml") digest = hemsim::testing::tree_digest(a);
  }
  const bool pinned = digest == kPinnedDigest;
  report(6, "determinism", identical && pinned,
         std::to_string(configs) + "/" + std::to_string(jobs.size()) + " configs byte-identical across two runs; digest " +
             digest + (pinned ? " matches" : " != pinned " + std::string(kPinnedDigest)));
}

void feasibility() {
  std::mt19937_64 gen(kFeasibilitySeed);
  int ok = 0, runs = 0;
  const OptimizerKind kinds[] = {OptimizerKind::GA, OptimizerKind::HSA, OptimizerKind::Oracle};
  for (; runs < kFeasibilityRuns; ++runs) {
    const auto inst = hemsim::testing::random_instance(gen, kMaxFlexible);
    const auto r = run_optimizer(inst.scenario, inst.tariff, select(kinds[runs % 3], gen()));
    ok += validate_schedule(r.schedule, inst.scenario).empty();
  }
  report(7, "feasibility of optimizer outputs", ok == runs,
         std::to_string(ok) + "/" + std::to_string(runs) + " schedules pass every rule");
}

void attack_direction() {
  const auto s = make_table1_scenario();
  const auto winter = make_default_tariff(Season::Winter);
  const std::vector<AttackSpec> attacks{parse_attack(kWinterPeakLower)};
  int ok = 0, total = 0;
  Percent lowest{100};
  for (auto kind : {OptimizerKind::GA, OptimizerKind::HSA}) {
    const auto sweep = sweep_seeds(s, winter, attacks, select(kind), BillingMode::TrueTariff,
                                   {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    for (const auto& r : sweep.reports) {
      ++total;
      ok += r.attacked.cost.total >= r.clean.cost.total && r.ri_total > kMinDailyRI;
      lowest = std::min(lowest, r.ri_total);
    }
  }
  report(8, "winter peak-lowering attack", ok == total,
         std::to_string(ok) + "/" + std::to_string(total) + " runs with C_A >= C_O and daily RI > 90; lowest RI " +
             format_percent(lowest));
}

}  // namespace

int main() {
  guarded(1, "oracle equivalence", oracle_equivalence);
  guarded(2, "heuristics beat the baseline", fig3_direction);
  guarded(3, "resilience index exactness", ri_exactness);
  guarded(4, "scale-attack immunity", scale_immunity);
  guarded(5, "oracle attack-harm bound", oracle_harm_bound);
  guarded(6, "determinism", determinism);
  guarded(7, "feasibility of optimizer outputs", feasibility);
  guarded(8, "winter peak-lowering attack", attack_direction);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
