#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hemsim/experiment.hpp"

namespace hemsim {

// CSV writers. Fixed column order, '.' decimal separator, '\n' line ends.
// Money is printed in cents with four decimals (the exact fixed-point unit),
// percentages with four decimals.

struct NamedCost {
  std::string name;  // column prefix, e.g. "ga"
  CostBreakdown cost;
};

/// hour,<name>_cost,...  then 24 rows.
std::string hourly_cost_csv(const std::vector<NamedCost>& columns);

struct OptimizeSummaryRow {
  OptimizerKind optimizer;
  std::uint64_t seed;
  const OptimizerResult* result;
};

/// optimizer,seed,total_cost,baseline_cost,reduction_pct,evaluations
std::string optimize_summary_csv(const std::vector<OptimizeSummaryRow>& rows, Money baseline_total);

/// optimizer,seed,appliance,activation
std::string schedule_csv(const std::vector<OptimizeSummaryRow>& rows);

/// hour,<opt>_clean_cost,<opt>_attacked_cost,...
std::string attack_hourly_csv(const std::vector<const ExperimentReport*>& reports);

/// hour,<opt>_ri,...  with "undefined" where the clean hourly cost is zero.
std::string attack_ri_csv(const std::vector<const ExperimentReport*>& reports);

/// optimizer,seed,billing_mode,c_o,c_a,ri_total,ri_hourly_mean
std::string attack_summary_csv(const std::vector<const ExperimentReport*>& reports);

/// optimizer,runs,ri_total_mean,ri_total_min,ri_total_max,c_o_mean,c_o_min,c_o_max,c_a_mean,c_a_min,c_a_max
std::string sweep_summary_csv(const std::vector<std::pair<OptimizerKind, SweepSummary>>& rows);

/// hour,band,true_price,forged_price
std::string forged_tariff_csv(const TariffDay& true_tariff, const TariffDay& forged);

/// Full report as a YAML record.
std::string report_record(const ExperimentReport& report);

/// Header and rows of a CSV produced by the writers above (no quoting).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};
CsvTable parse_csv(const std::string& text);

}  // namespace hemsim
