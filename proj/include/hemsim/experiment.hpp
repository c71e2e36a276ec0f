#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hemsim/attack.hpp"
#include "hemsim/domain.hpp"
#include "hemsim/resilience.hpp"
#include "hemsim/schedulers.hpp"

namespace hemsim {

enum class OptimizerKind { GA, HSA, Oracle, Baseline };
enum class BillingMode { TrueTariff, ForgedTariff };

const char* to_string(OptimizerKind kind);
const char* to_string(BillingMode mode);
OptimizerKind parse_optimizer_kind(const std::string& text);
BillingMode parse_billing_mode(const std::string& text);

struct OptimizerSelection {
  OptimizerKind kind = OptimizerKind::GA;
  GAParams ga;
  HSAParams hsa;
  std::uint64_t oracle_limit = kDefaultOracleLimit;

  std::uint64_t seed() const;
  OptimizerSelection with_seed(std::uint64_t seed) const;

  bool operator==(const OptimizerSelection&) const = default;
};

OptimizerResult run_optimizer(const HouseholdScenario& scenario, const TariffDay& tariff,
                              const OptimizerSelection& selection);

struct ExperimentReport {
  OptimizerKind optimizer;
  OptimizerSelection params_echo;
  BillingMode billing_mode;
  std::vector<AttackSpec> attack_echo;
  TariffDay forged_tariff;
  /// Optimized and billed on the true tariff; cost is C_O.
  OptimizerResult clean;
  /// Optimized on the forged tariff, billed per billing_mode; cost is C_A.
  /// best_cost_history stays in forged-tariff terms.
  OptimizerResult attacked;
  Percent ri_total;
  /// Slot-wise RI; nullopt where the clean hourly cost is zero.
  std::array<std::optional<Percent>, kSlotsPerDay> ri_hourly;
  /// Mean of the defined hourly values; nullopt if none are defined.
  std::optional<double> ri_hourly_mean;
};

ExperimentReport run_experiment(const HouseholdScenario& scenario, const TariffDay& true_tariff,
                                const std::vector<AttackSpec>& attacks, const OptimizerSelection& selection,
                                BillingMode billing_mode = BillingMode::TrueTariff);

struct Stats {
  double mean = 0;
  double min = 0;
  double max = 0;
};

struct SweepSummary {
  std::size_t runs = 0;
  Stats ri_total;
  Stats clean_cost_cents;
  Stats attacked_cost_cents;
};

struct SweepResult {
  std::vector<ExperimentReport> reports;  // in seed order
  SweepSummary summary;
};

/// One experiment per seed (the seed replaces the selection's own).
/// Throws InvalidInput when `seeds` is empty.
SweepResult sweep_seeds(const HouseholdScenario& scenario, const TariffDay& true_tariff,
                        const std::vector<AttackSpec>& attacks, const OptimizerSelection& selection,
                        BillingMode billing_mode, const std::vector<std::uint64_t>& seeds);

SweepSummary summarize(const std::vector<ExperimentReport>& reports);

}  // namespace hemsim
