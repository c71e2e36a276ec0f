#include <ostream>

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "hemsim/errors.hpp"
#include "hemsim/schedulers.hpp"
#include "support/instances.hpp"

using namespace hemsim;

namespace {

Appliance uninterruptible(const std::string& id, const char* kwh, int slots) {
  return Appliance{id, ApplianceKind::FlexibleUninterruptible, Energy::from_kwh(kwh), slots, std::nullopt};
}

Appliance interruptible(const std::string& id, const char* kwh, int slots) {
  return Appliance{id, ApplianceKind::FlexibleInterruptible, Energy::from_kwh(kwh), slots, std::nullopt};
}

HouseholdScenario wm_iron() {
  Schedule baseline;
  baseline.assignment["washing machine"] = contiguous_run(7, 8);
  baseline.assignment["iron"] = contiguous_run(15, 7);
  return HouseholdScenario({uninterruptible("washing machine", "0.7", 8), uninterruptible("iron", "1.8", 7)},
                           {{"washing machine", "iron"}}, baseline);
}

HouseholdScenario single(const Appliance& a) {
  Schedule baseline;
  baseline.assignment[a.id] = contiguous_run(0, a.operating_slots);
  return HouseholdScenario({a}, {}, baseline);
}

Candidate wm_iron_candidate(int wm, int iron) {
  Candidate c;
  c.starts["washing machine"] = wm;
  c.starts["iron"] = iron;
  return c;
}

TariffDay tariff_from(const std::vector<std::int64_t>& tenths) {
  std::array<Price, kSlotsPerDay> prices;
  std::array<Band, kSlotsPerDay> bands;
  bands.fill(Band::OffPeak);
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) prices[t] = Price{tenths[t]};
  return TariffDay(prices, bands, Season::Winter);
}

// Exhaustive search written against the public schedule API only: every
// feasible schedule is built explicitly, costed with total_cost, and the
// first strictly cheaper one in lexicographic candidate order is kept.
struct NaiveOptimum {
  Money cost;
  Schedule schedule;
};

NaiveOptimum naive_optimum(const HouseholdScenario& s, const TariffDay& tariff) {
  std::vector<const Appliance*> flex;
  for (const auto& a : s.appliances()) {
    if (a.is_flexible()) flex.push_back(&a);
  }
  Schedule current;
  for (const auto& a : s.appliances()) {
    if (!a.is_flexible()) current.assignment[a.id] = *a.fixed_profile;
  }
  std::optional<NaiveOptimum> best;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == flex.size()) {
      if (!validate_schedule(current, s).empty()) return;
      const Money c = total_cost(current, tariff, s).total;
      if (!best || c < best->cost) best = NaiveOptimum{c, current};
      return;
    }
    const Appliance& a = *flex[i];
    if (a.kind == ApplianceKind::FlexibleUninterruptible) {
      for (int start = 0; start + a.operating_slots <= kSlotsPerDay; ++start) {
        current.assignment[a.id] = contiguous_run(start, a.operating_slots);
        walk(i + 1);
      }
      return;
    }
    // k-subsets in lexicographic order of their ascending slot lists.
    std::vector<int> idx(static_cast<std::size_t>(a.operating_slots));
    std::iota(idx.begin(), idx.end(), 0);
    const int k = a.operating_slots;
    while (true) {
      Activation bits;
      for (int t : idx) bits.set(static_cast<std::size_t>(t));
      current.assignment[a.id] = bits;
      walk(i + 1);
      int j = k - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] == kSlotsPerDay - k + j) --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (int m = j + 1; m < k; ++m) idx[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(m - 1)] + 1;
    }
  };
  walk(0);
  return *best;
}

bool non_increasing(const std::vector<Money>& h) {
  return std::adjacent_find(h.begin(), h.end(), [](Money a, Money b) { return b > a; }) == h.end();
}

GAParams small_ga(std::uint64_t seed) {
  GAParams p;
  p.population_size = 12;
  p.generations = 30;
  p.seed = seed;
  return p;
}

HSAParams small_hsa(std::uint64_t seed) {
  HSAParams p;
  p.harmony_memory_size = 10;
  p.max_improvisations = 400;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("precedence repair") {
  const auto s = wm_iron();
  SUBCASE("feasible pair is untouched") {
    const auto r = repair_precedence(wm_iron_candidate(0, 12), s);
    CHECK(r.candidate == wm_iron_candidate(0, 12));
    CHECK_FALSE(r.overflow());
  }
  SUBCASE("successor pushed to the predecessor's end") {
    CHECK(repair_precedence(wm_iron_candidate(5, 5), s).candidate.starts.at("iron") == 13);
    CHECK(repair_precedence(wm_iron_candidate(2, 4), s).candidate.starts.at("iron") == 10);
  }
  SUBCASE("overflow clamps to the latest start and is flagged") {
    const auto r = repair_precedence(wm_iron_candidate(16, 0), s);
    CHECK(r.overflow());
    CHECK(r.candidate.starts.at("iron") == 17);
    // The washing machine has to end by 17 for the iron to fit.
    CHECK(r.candidate.starts.at("washing machine") == 9);
    CHECK(r.overflowed == std::vector<std::string>{"washing machine"});
    CHECK(validate_schedule(decode(wm_iron_candidate(16, 0), s), s).empty());
  }
}

TEST_CASE("decode") {
  SUBCASE("fixed-only household decodes to its fixed profiles") {
    const auto t1 = make_table1_scenario();
    std::vector<Appliance> fixed;
    Schedule base;
    for (const auto& a : t1.appliances()) {
      if (a.is_flexible()) continue;
      fixed.push_back(a);
      base.assignment[a.id] = *a.fixed_profile;
    }
    const HouseholdScenario s(fixed, {}, base);
    CHECK(decode(Candidate{}, s) == base);
  }
  SUBCASE("precedence is repaired") {
    const auto out = decode(wm_iron_candidate(2, 4), wm_iron());
    CHECK(out.assignment.at("iron") == contiguous_run(10, 7));
    CHECK(out.assignment.at("washing machine") == contiguous_run(2, 8));
  }
  SUBCASE("encoding mismatches") {
    const auto ac = single(interruptible("air conditioner", "1.44", 10));
    Candidate c;
    c.slot_sets["air conditioner"] = activation_from_string("111000000000000000000000");
    CHECK_THROWS_AS(decode(c, ac), EncodingMismatch);
    CHECK_THROWS_AS(decode(wm_iron_candidate(0, 18), wm_iron()), EncodingMismatch);
    Candidate missing;
    missing.starts["washing machine"] = 0;
    CHECK_THROWS_AS(decode(missing, wm_iron()), EncodingMismatch);
    Candidate extra = wm_iron_candidate(0, 8);
    extra.starts["kettle"] = 0;
    CHECK_THROWS_AS(decode(extra, wm_iron()), EncodingMismatch);
  }
}

TEST_CASE("fitness") {
  const auto s = single(interruptible("x", "1", 1));
  std::vector<std::int64_t> tenths(24, 100);
  tenths[3] = 50;
  Candidate c;
  c.slot_sets["x"] = contiguous_run(3, 1);
  CHECK(fitness(c, s, tariff_from(tenths)) == Money::from_tenths(50));
  CHECK(fitness(c, s, tariff_from(tenths)) == fitness(c, s, tariff_from(tenths)));

  const auto flat = TariffDay::flat(Price::from_cents("10"));
  const auto t1 = wm_iron();
  CHECK(fitness(wm_iron_candidate(0, 8), t1, flat) == fitness(wm_iron_candidate(9, 17), t1, flat));
}

TEST_CASE("fitness equals the cost of the decoded schedule") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto inst = hemsim::testing::random_instance(gen);
    Candidate c;
    for (const auto& a : inst.scenario.appliances()) {
      if (a.kind == ApplianceKind::FlexibleUninterruptible) {
        c.starts[a.id] = static_cast<int>(gen() % static_cast<std::uint64_t>(kSlotsPerDay - a.operating_slots + 1));
      } else if (a.kind == ApplianceKind::FlexibleInterruptible) {
        std::vector<int> slots(kSlotsPerDay);
        std::iota(slots.begin(), slots.end(), 0);
        std::shuffle(slots.begin(), slots.end(), gen);
        Activation bits;
        for (int k = 0; k < a.operating_slots; ++k) bits.set(static_cast<std::size_t>(slots[static_cast<std::size_t>(k)]));
        c.slot_sets[a.id] = bits;
      }
    }
    const Schedule decoded = decode(c, inst.scenario);
    CHECK(validate_schedule(decoded, inst.scenario).empty());
    CHECK(fitness(c, inst.scenario, inst.tariff) == total_cost(decoded, inst.tariff, inst.scenario).total);
  }
}

TEST_CASE("parameter validation") {
  GAParams ga;
  ga.tournament_size = 40;
  CHECK_THROWS_AS(ga.validate(), InvalidInput);
  ga = GAParams{};
  ga.mutation_rate = 1.5;
  CHECK_THROWS_AS(ga.validate(), InvalidInput);
  HSAParams hsa;
  hsa.hmcr = -0.1;
  CHECK_THROWS_AS(hsa.validate(), InvalidInput);
  hsa = HSAParams{};
  hsa.max_improvisations = 0;
  CHECK_THROWS_AS(hsa.validate(), InvalidInput);
}

TEST_CASE("single cheap slot is found by every optimizer") {
  const auto s = single(interruptible("x", "1", 1));
  std::vector<std::int64_t> tenths(24, 120);
  tenths[17] = 40;
  const auto tariff = tariff_from(tenths);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GAParams ga;
    ga.seed = seed;
    CHECK(ga_optimize(s, tariff, ga).schedule.assignment.at("x") == contiguous_run(17, 1));
    HSAParams hsa;
    hsa.seed = seed;
    CHECK(hsa_optimize(s, tariff, hsa).schedule.assignment.at("x") == contiguous_run(17, 1));
  }
  CHECK(brute_force_optimize(s, tariff).schedule.assignment.at("x") == contiguous_run(17, 1));
}

TEST_CASE("optimizers on fixed-only households return the fixed schedule") {
  Appliance lamp{"lamp", ApplianceKind::Fixed, Energy{100}, 2, contiguous_run(5, 2)};
  Schedule base;
  base.assignment["lamp"] = contiguous_run(5, 2);
  const HouseholdScenario s({lamp}, {}, base);
  const auto tariff = TariffDay::flat(Price{50});
  CHECK(ga_optimize(s, tariff, GAParams{}).schedule == base);
  CHECK(hsa_optimize(s, tariff, HSAParams{}).schedule == base);
  CHECK(brute_force_optimize(s, tariff).schedule == base);
}

TEST_CASE("brute force") {
  SUBCASE("tiny uninterruptible domain") {
    const auto s = single(uninterruptible("x", "1", 23));
    std::vector<std::int64_t> tenths(24, 100);
    tenths[0] = 300;
    const auto r = brute_force_optimize(s, tariff_from(tenths));
    CHECK(r.evaluations == 2);
    CHECK(r.schedule.assignment.at("x") == contiguous_run(1, 23));
  }
  SUBCASE("washing machine and iron match a double loop") {
    const auto s = wm_iron();
    const auto winter = make_default_tariff(Season::Winter);
    const auto r = brute_force_optimize(s, winter);
    std::optional<std::int64_t> best;
    std::pair<int, int> arg;
    for (int wm = 0; wm <= 16; ++wm) {
      for (int iron = wm + 8; iron <= 17; ++iron) {
        std::int64_t c = 0;
        for (int t = wm; t < wm + 8; ++t) c += 700 * winter.price(t).tenths;
        for (int t = iron; t < iron + 7; ++t) c += 1800 * winter.price(t).tenths;
        if (!best || c < *best) {
          best = c;
          arg = {wm, iron};
        }
      }
    }
    CHECK(r.cost.total.units == *best);
    CHECK(r.schedule.assignment.at("washing machine") == contiguous_run(arg.first, 8));
    CHECK(r.schedule.assignment.at("iron") == contiguous_run(arg.second, 7));
    CHECK(validate_schedule(r.schedule, s).empty());
    CHECK(r.best_cost_history.size() == 1);
  }
  SUBCASE("single interruptible appliance takes the cheapest slots") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 20; ++i) {
      const int k = 1 + static_cast<int>(gen() % 4);
      const auto s = single(interruptible("x", "1", k));
      std::vector<std::int64_t> tenths(24);
      for (auto& p : tenths) p = 30 + static_cast<std::int64_t>(gen() % 8);  // plenty of ties
      std::vector<int> order(24);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return tenths[a] < tenths[b]; });
      Activation expected;
      for (int j = 0; j < k; ++j) expected.set(static_cast<std::size_t>(order[static_cast<std::size_t>(j)]));
      CHECK(brute_force_optimize(s, tariff_from(tenths)).schedule.assignment.at("x") == expected);
    }
  }
  SUBCASE("full table-1 household is too large") {
    const auto t1 = make_table1_scenario();
    CHECK(search_space_size(t1) == 441388754942256.0L);
    try {
      brute_force_optimize(t1, make_default_tariff(Season::Winter), 1'000'000);
      FAIL("expected SearchSpaceTooLarge");
    } catch (const SearchSpaceTooLarge& e) {
      CHECK(e.size() == 441388754942256.0L);
      CHECK(e.limit() == 1'000'000);
      CHECK(std::string(e.what()).find("441388754942256") != std::string::npos);
    }
  }
}

TEST_CASE("brute force agrees with naive enumeration, ties included") {
  std::mt19937_64 gen(21);
  for (int i = 0; i < 30; ++i) {
    auto inst = hemsim::testing::random_instance(gen, 2, 4e4L);
    // Coarse prices create many equal-cost schedules.
    std::vector<std::int64_t> tenths(24);
    for (auto& p : tenths) p = 10 * (1 + static_cast<std::int64_t>(gen() % 3));
    const auto tariff = tariff_from(tenths);
    const auto naive = naive_optimum(inst.scenario, tariff);
    const auto r = brute_force_optimize(inst.scenario, tariff);
    CHECK(r.cost.total == naive.cost);
    CHECK(r.schedule == naive.schedule);
  }
}

TEST_CASE("optimizer properties on random instances") {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 25; ++i) {
    const auto inst = hemsim::testing::random_instance(gen);
    const auto& s = inst.scenario;
    const std::uint64_t seed = gen();
    const auto oracle = brute_force_optimize(s, inst.tariff);
    const auto ga = ga_optimize(s, inst.tariff, small_ga(seed));
    const auto hsa = hsa_optimize(s, inst.tariff, small_hsa(seed));

    CHECK(ga == ga_optimize(s, inst.tariff, small_ga(seed)));
    CHECK(hsa == hsa_optimize(s, inst.tariff, small_hsa(seed)));
    CHECK(oracle == brute_force_optimize(s, inst.tariff));
    for (const auto* r : {&oracle, &ga, &hsa}) {
      CHECK(validate_schedule(r->schedule, s).empty());
      CHECK(non_increasing(r->best_cost_history));
      CHECK(r->best_cost_history.back() == r->cost.total);
      CHECK(oracle.cost.total <= r->cost.total);
    }
    CHECK(ga.seed == seed);
    CHECK(ga.evaluations == 12 + 30 * 11);
    CHECK(ga.best_cost_history.size() == 31);
    CHECK(hsa.evaluations == 10 + 400);
    CHECK(hsa.best_cost_history.size() == 401);

    // Integer price scaling leaves every comparison, and so every decision, unchanged.
    const std::int64_t k = 2 + static_cast<std::int64_t>(gen() % 9);
    auto prices = inst.tariff.prices();
    for (auto& p : prices) p.tenths *= k;
    const TariffDay scaled(prices, inst.tariff.bands(), inst.tariff.season());
    const auto ga_k = ga_optimize(s, scaled, small_ga(seed));
    const auto hsa_k = hsa_optimize(s, scaled, small_hsa(seed));
    const auto oracle_k = brute_force_optimize(s, scaled);
    CHECK(ga_k.schedule == ga.schedule);
    CHECK(hsa_k.schedule == hsa.schedule);
    CHECK(oracle_k.schedule == oracle.schedule);
    CHECK(ga_k.cost.total == ga.cost.total * k);
    CHECK(oracle_k.cost.total == oracle.cost.total * k);
  }
}

TEST_CASE("different seeds are allowed to differ but stay feasible") {
  const auto s = make_table1_scenario();
  const auto tariff = make_default_tariff(Season::Summer);
  const auto a = ga_optimize(s, tariff, small_ga(1));
  const auto b = ga_optimize(s, tariff, small_ga(2));
  CHECK(validate_schedule(a.schedule, s).empty());
  CHECK(validate_schedule(b.schedule, s).empty());
  CHECK(a.best_cost_history != b.best_cost_history);
}

TEST_CASE("table-1 household: both heuristics beat the baseline") {
  const auto s = make_table1_scenario();
  const auto winter = make_default_tariff(Season::Winter);
  const auto summer = make_default_tariff(Season::Summer);
  CHECK(ga_optimize(s, winter, GAParams{}).cost.total < baseline_result(s, winter).cost.total);
  CHECK(hsa_optimize(s, summer, HSAParams{}).cost.total < baseline_result(s, summer).cost.total);
}

TEST_CASE("candidate ordering") {
  Candidate a;
  a.starts["b"] = 3;
  a.slot_sets["a"] = activation_from_string("110000000000000000000000");
  Candidate b = a;
  CHECK_FALSE(a.lexicographically_less(b));
  b.starts["b"] = 4;
  CHECK(a.lexicographically_less(b));
  b = a;
  b.slot_sets["a"] = activation_from_string("101000000000000000000000");
  // {0,1} < {0,2}; the slot set comes first because "a" < "b".
  CHECK(a.lexicographically_less(b));
  b.starts["b"] = 0;
  CHECK(a.lexicographically_less(b));
}
