#include "hemsim/experiment.hpp"

#include <algorithm>

#include "hemsim/errors.hpp"

namespace hemsim {

const char* to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::GA: return "ga";
    case OptimizerKind::HSA: return "hsa";
    case OptimizerKind::Oracle: return "oracle";
    case OptimizerKind::Baseline: return "baseline";
  }
  return "?";
}

const char* to_string(BillingMode mode) { return mode == BillingMode::TrueTariff ? "true_tariff" : "forged_tariff"; }

OptimizerKind parse_optimizer_kind(const std::string& text) {
  for (auto k : {OptimizerKind::GA, OptimizerKind::HSA, OptimizerKind::Oracle, OptimizerKind::Baseline}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidInput("unknown optimizer '" + text + "' (expected ga, hsa, oracle or baseline)");
}

BillingMode parse_billing_mode(const std::string& text) {
  if (text == "true_tariff") return BillingMode::TrueTariff;
  if (text == "forged_tariff") return BillingMode::ForgedTariff;
  throw InvalidInput("unknown billing mode '" + text + "' (expected true_tariff or forged_tariff)");
}

std::uint64_t OptimizerSelection::seed() const {
  switch (kind) {
    case OptimizerKind::GA: return ga.seed;
    case OptimizerKind::HSA: return hsa.seed;
    default: return 0;
  }
}

OptimizerSelection OptimizerSelection::with_seed(std::uint64_t seed) const {
  OptimizerSelection out = *this;
  // The oracle and the baseline draw nothing, so their echo stays seed-free.
  if (kind == OptimizerKind::GA) out.ga.seed = seed;
  if (kind == OptimizerKind::HSA) out.hsa.seed = seed;
  return out;
}

OptimizerResult run_optimizer(const HouseholdScenario& scenario, const TariffDay& tariff,
                              const OptimizerSelection& selection) {
  switch (selection.kind) {
    case OptimizerKind::GA: return ga_optimize(scenario, tariff, selection.ga);
    case OptimizerKind::HSA: return hsa_optimize(scenario, tariff, selection.hsa);
    case OptimizerKind::Oracle: return brute_force_optimize(scenario, tariff, selection.oracle_limit);
    case OptimizerKind::Baseline: return baseline_result(scenario, tariff);
  }
  throw std::logic_error("unhandled optimizer kind");
}

ExperimentReport run_experiment(const HouseholdScenario& scenario, const TariffDay& true_tariff,
                                const std::vector<AttackSpec>& attacks, const OptimizerSelection& selection,
                                BillingMode billing_mode) {
  OptimizerResult clean = run_optimizer(scenario, true_tariff, selection);
  TariffDay forged = compose_attacks(true_tariff, attacks);
  OptimizerResult attacked = run_optimizer(scenario, forged, selection);
  attacked.cost = total_cost(attacked.schedule, billing_mode == BillingMode::TrueTariff ? true_tariff : forged, scenario);

  std::array<std::optional<Percent>, kSlotsPerDay> hourly;
  double sum = 0;
  int defined = 0;
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
    if (clean.cost.hourly[t].units == 0) continue;
    hourly[t] = resilience_index(attacked.cost.hourly[t], clean.cost.hourly[t]);
    sum += to_double(*hourly[t]);
    ++defined;
  }
  const Percent ri_total = resilience_index(attacked.cost.total, clean.cost.total);
  return ExperimentReport{
      selection.kind,
      selection,
      billing_mode,
      attacks,
      std::move(forged),
      std::move(clean),
      std::move(attacked),
      ri_total,
      hourly,
      defined > 0 ? std::optional<double>(sum / defined) : std::nullopt,
  };
}

namespace {

template <typename F>
Stats fold(const std::vector<ExperimentReport>& reports, F value) {
  Stats s;
  if (reports.empty()) return s;
  s.min = s.max = value(reports.front());
  double sum = 0;
  for (const auto& r : reports) {
    const double v = value(r);
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = sum / static_cast<double>(reports.size());
  return s;
}

}  // namespace

SweepSummary summarize(const std::vector<ExperimentReport>& reports) {
  SweepSummary s;
  s.runs = reports.size();
  s.ri_total = fold(reports, [](const ExperimentReport& r) { return to_double(r.ri_total); });
  s.clean_cost_cents = fold(reports, [](const ExperimentReport& r) { return r.clean.cost.total.cents(); });
  s.attacked_cost_cents = fold(reports, [](const ExperimentReport& r) { return r.attacked.cost.total.cents(); });
  return s;
}

SweepResult sweep_seeds(const HouseholdScenario& scenario, const TariffDay& true_tariff,
                        const std::vector<AttackSpec>& attacks, const OptimizerSelection& selection,
                        BillingMode billing_mode, const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw InvalidInput("sweep_seeds needs at least one seed");
  SweepResult out;
  out.reports.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    out.reports.push_back(run_experiment(scenario, true_tariff, attacks, selection.with_seed(seed), billing_mode));
  }
  out.summary = summarize(out.reports);
  return out;
}

}  // namespace hemsim
