#include <ostream>

#include <doctest.h>

#include <random>

#include "hemsim/errors.hpp"
#include "hemsim/experiment.hpp"
#include "hemsim/resilience.hpp"
#include "support/instances.hpp"

using namespace hemsim;

TEST_CASE("resilience index examples") {
  const Money c = Money::parse_cents("681.84");
  CHECK(resilience_index(c, c) == Percent(100));
  CHECK(resilience_index(c * 2, c) == Percent(0));
  CHECK(resilience_index(Money{}, c) == Percent(0));
  CHECK(resilience_index(c * 3, c) == Percent(-100));
  CHECK(resilience_index(Money::parse_cents("1018"), Money::parse_cents("1000")) == Percent(982, 10));
  CHECK(resilience_index(Money::parse_cents("982"), Money::parse_cents("1000")) == Percent(982, 10));
  CHECK_THROWS_AS(resilience_index(c, Money{}), UndefinedRI);
  CHECK_THROWS_AS(resilience_index(Money{-1}, c), InvalidInput);
}

TEST_CASE("resilience index is exact for every representable cost") {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 1000; ++i) {
    const Money clean{1 + static_cast<std::int64_t>(gen() % 100'000'000)};
    CHECK(resilience_index(clean, clean) == Percent(100));
    CHECK(resilience_index(clean * 2, clean) == Percent(0));
    CHECK(resilience_index(clean * 3, clean) == Percent(-100));
    CHECK(resilience_index(Money{}, clean) == Percent(0));
    const Money attacked{static_cast<std::int64_t>(gen() % 300'000'000)};
    const Percent ri = resilience_index(attacked, clean);
    CHECK(ri <= Percent(100));
    CHECK((ri == Percent(100)) == (attacked == clean));
  }
}

TEST_CASE("percent formatting") {
  CHECK(format_percent(Percent(100)) == "100.0000");
  CHECK(format_percent(Percent(982, 10)) == "98.2000");
  CHECK(format_percent(Percent(-100)) == "-100.0000");
  CHECK(format_percent(Percent(2, 3)) == "0.6667");
  CHECK(format_percent(Percent(-2, 3)) == "-0.6667");
  CHECK(format_percent(Percent(1, 20000)) == "0.0001");  // half away from zero
  CHECK(format_percent(Percent(-1, 20000)) == "-0.0001");
  CHECK(to_double(Percent(982, 10)) == doctest::Approx(98.2));
}

namespace {

OptimizerSelection quick(OptimizerKind kind) {
  OptimizerSelection s;
  s.kind = kind;
  s.ga.population_size = 12;
  s.ga.generations = 25;
  s.hsa.harmony_memory_size = 10;
  s.hsa.max_improvisations = 300;
  return s;
}

}  // namespace

TEST_CASE("no attack means no change") {
  std::mt19937_64 gen(31);
  const auto inst = hemsim::testing::random_instance(gen);
  for (auto kind : {OptimizerKind::GA, OptimizerKind::HSA, OptimizerKind::Oracle, OptimizerKind::Baseline}) {
    const auto r = run_experiment(inst.scenario, inst.tariff, {}, quick(kind));
    CHECK(r.attacked == r.clean);
    CHECK(r.ri_total == Percent(100));
    CHECK(r.forged_tariff == inst.tariff);
    for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
      if (r.ri_hourly[t]) CHECK(*r.ri_hourly[t] == Percent(100));
    }
  }
}

TEST_CASE("report fields are consistent") {
  std::mt19937_64 gen(32);
  for (int i = 0; i < 10; ++i) {
    const auto inst = hemsim::testing::random_instance(gen);
    const AttackSpec attack = DelayAttack{static_cast<int>(gen() % 24)};
    for (auto mode : {BillingMode::TrueTariff, BillingMode::ForgedTariff}) {
      const auto r = run_experiment(inst.scenario, inst.tariff, {attack}, quick(OptimizerKind::GA), mode);
      CHECK(r.ri_total == resilience_index(r.attacked.cost.total, r.clean.cost.total));
      CHECK(r.clean.seed == r.attacked.seed);
      CHECK(r.billing_mode == mode);
      CHECK(r.attack_echo.size() == 1);
      const auto& bill = mode == BillingMode::TrueTariff ? inst.tariff : r.forged_tariff;
      CHECK(r.attacked.cost == total_cost(r.attacked.schedule, bill, inst.scenario));
      double sum = 0;
      int defined = 0;
      for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
        CHECK(r.ri_hourly[t].has_value() == (r.clean.cost.hourly[t].units != 0));
        if (!r.ri_hourly[t]) continue;
        CHECK(*r.ri_hourly[t] == resilience_index(r.attacked.cost.hourly[t], r.clean.cost.hourly[t]));
        sum += to_double(*r.ri_hourly[t]);
        ++defined;
      }
      REQUIRE(r.ri_hourly_mean.has_value() == (defined > 0));
      if (defined > 0) CHECK(*r.ri_hourly_mean == doctest::Approx(sum / defined));
    }
  }
}

TEST_CASE("uniform scaling cannot hurt comparison-based optimizers") {
  std::mt19937_64 gen(33);
  for (int i = 0; i < 5; ++i) {
    const auto inst = hemsim::testing::random_instance(gen);
    for (auto kind : {OptimizerKind::GA, OptimizerKind::HSA, OptimizerKind::Oracle}) {
      for (std::int64_t k : {2, 3, 10}) {
        const auto r = run_experiment(inst.scenario, inst.tariff, {ScaleAttack{Factor(k), std::nullopt}}, quick(kind));
        CHECK(r.attacked.schedule == r.clean.schedule);
        CHECK(r.ri_total == Percent(100));
      }
    }
  }
}

TEST_CASE("the oracle cannot be tricked into a cheaper bill") {
  std::mt19937_64 gen(34);
  for (int i = 0; i < 15; ++i) {
    const auto inst = hemsim::testing::random_instance(gen, 2);
    const Activation lowered = contiguous_run(static_cast<int>(gen() % 20), 4);
    const auto r = run_experiment(inst.scenario, inst.tariff, {PeakLowerAttack{Price{10}, lowered}},
                                  quick(OptimizerKind::Oracle));
    CHECK(r.attacked.cost.total >= r.clean.cost.total);
    CHECK(r.ri_total <= Percent(100));
  }
}

TEST_CASE("seed sweeps") {
  std::mt19937_64 gen(35);
  const auto inst = hemsim::testing::random_instance(gen);
  const std::vector<AttackSpec> attacks{DelayAttack{6}};
  CHECK_THROWS_AS(sweep_seeds(inst.scenario, inst.tariff, attacks, quick(OptimizerKind::GA), BillingMode::TrueTariff, {}),
                  InvalidInput);

  SUBCASE("single seed") {
    const auto s =
        sweep_seeds(inst.scenario, inst.tariff, attacks, quick(OptimizerKind::GA), BillingMode::TrueTariff, {7});
    REQUIRE(s.reports.size() == 1);
    const auto& r = s.reports[0];
    CHECK(r.clean.seed == 7);
    CHECK(s.summary.runs == 1);
    CHECK(s.summary.ri_total.mean == to_double(r.ri_total));
    CHECK(s.summary.ri_total.min == s.summary.ri_total.max);
    CHECK(s.summary.clean_cost_cents.mean == r.clean.cost.total.cents());
    CHECK(s.summary.attacked_cost_cents.max == r.attacked.cost.total.cents());
  }
  SUBCASE("duplicate seeds give identical reports") {
    const auto s =
        sweep_seeds(inst.scenario, inst.tariff, attacks, quick(OptimizerKind::HSA), BillingMode::TrueTariff, {4, 4});
    REQUIRE(s.reports.size() == 2);
    CHECK(s.reports[0].clean == s.reports[1].clean);
    CHECK(s.reports[0].attacked == s.reports[1].attacked);
    CHECK(s.reports[0].ri_total == s.reports[1].ri_total);
  }
  SUBCASE("the oracle ignores the seed") {
    std::vector<std::uint64_t> seeds(100);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = gen();
    const auto small = hemsim::testing::random_instance(gen, 1, 3000);
    const auto s =
        sweep_seeds(small.scenario, small.tariff, attacks, quick(OptimizerKind::Oracle), BillingMode::TrueTariff, seeds);
    for (const auto& r : s.reports) {
      CHECK(r.clean == s.reports[0].clean);
      CHECK(r.attacked == s.reports[0].attacked);
      CHECK(r.params_echo == s.reports[0].params_echo);
    }
    CHECK(s.summary.ri_total.min == s.summary.ri_total.max);
  }
  SUBCASE("reports come back in seed order") {
    const auto s = sweep_seeds(inst.scenario, inst.tariff, attacks, quick(OptimizerKind::GA), BillingMode::TrueTariff,
                               {9, 2, 5});
    CHECK(s.reports[0].clean.seed == 9);
    CHECK(s.reports[1].clean.seed == 2);
    CHECK(s.reports[2].clean.seed == 5);
  }
}

TEST_CASE("optimizer and billing names") {
  for (auto k : {OptimizerKind::GA, OptimizerKind::HSA, OptimizerKind::Oracle, OptimizerKind::Baseline}) {
    CHECK(parse_optimizer_kind(to_string(k)) == k);
  }
  CHECK(parse_billing_mode("forged_tariff") == BillingMode::ForgedTariff);
  CHECK_THROWS_AS(parse_optimizer_kind("pso"), InvalidInput);
  CHECK_THROWS_AS(parse_billing_mode("both"), InvalidInput);
}
