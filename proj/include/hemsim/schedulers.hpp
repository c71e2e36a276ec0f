#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hemsim/domain.hpp"

namespace hemsim {

/// Decision variables of the scheduling problem. Fixed appliances never
/// appear; their cost is a constant offset.
struct Candidate {
  std::map<std::string, int> starts;            // uninterruptible id -> start slot
  std::map<std::string, Activation> slot_sets;  // interruptible id -> active slots

  bool operator==(const Candidate&) const = default;
  /// Lexicographic order over appliances in canonical (id) order; a start
  /// compares as an integer, a slot set as its ascending slot sequence.
  bool lexicographically_less(const Candidate& other) const;
};

struct RepairOutcome {
  Candidate candidate;
  /// Appliances whose start had to be clamped below the desired position.
  std::vector<std::string> overflowed;
  bool overflow() const { return !overflowed.empty(); }
};

struct GAParams {
  int population_size = 32;
  int generations = 200;
  double crossover_rate = 0.9;
  double mutation_rate = 0.05;
  int tournament_size = 3;
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const GAParams&) const = default;
};

struct HSAParams {
  int harmony_memory_size = 30;
  double hmcr = 0.9;
  double par = 0.3;
  int max_improvisations = 5000;
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const HSAParams&) const = default;
};

struct OptimizerResult {
  Schedule schedule;
  CostBreakdown cost;
  std::vector<Money> best_cost_history;
  std::uint64_t evaluations = 0;
  std::uint64_t seed = 0;

  bool operator==(const OptimizerResult&) const = default;
};

inline constexpr std::uint64_t kDefaultOracleLimit = 10'000'000;

/// Pushes every precedence successor to start no earlier than its
/// predecessor's end. A start that would then run past midnight is clamped
/// to its latest feasible start and reported in `overflowed`; predecessors
/// are clamped the same way so the pair stays ordered.
RepairOutcome repair_precedence(const Candidate& candidate, const HouseholdScenario& scenario);

/// Combines the candidate's flexible assignments (after precedence repair)
/// with the fixed profiles. Throws EncodingMismatch when the candidate does
/// not cover exactly the scenario's flexible appliances or breaks a domain.
Schedule decode(const Candidate& candidate, const HouseholdScenario& scenario);

/// Total cost of the decoded candidate under `tariff`. Evaluated through a
/// precomputed cost table rather than the schedule, but always equal to
/// total_cost(decode(candidate), tariff, scenario).total.
Money fitness(const Candidate& candidate, const HouseholdScenario& scenario, const TariffDay& tariff);

/// Elitist GA with tournament selection, uniform crossover per decision
/// variable and per-variable mutation. Deterministic in (inputs, seed).
OptimizerResult ga_optimize(const HouseholdScenario& scenario, const TariffDay& tariff, const GAParams& params);

/// Harmony search. Deterministic in (inputs, seed).
OptimizerResult hsa_optimize(const HouseholdScenario& scenario, const TariffDay& tariff, const HSAParams& params);

/// Exhaustive enumeration; the global optimum with ties broken by the
/// lexicographically smallest candidate. Throws SearchSpaceTooLarge when the
/// number of candidates exceeds `limit`.
OptimizerResult brute_force_optimize(const HouseholdScenario& scenario, const TariffDay& tariff,
                                     std::uint64_t limit = kDefaultOracleLimit);

/// Number of candidates brute_force_optimize would enumerate.
long double search_space_size(const HouseholdScenario& scenario);

/// The scenario's baseline, costed under `tariff`.
OptimizerResult baseline_result(const HouseholdScenario& scenario, const TariffDay& tariff);

}  // namespace hemsim
