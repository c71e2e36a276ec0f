#include "hemsim/schedulers.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "genome.hpp"
#include "hemsim/errors.hpp"
#include "hemsim/rng.hpp"

namespace hemsim {

using detail::CostModel;
using detail::Genome;
using detail::Problem;

namespace {

bool slot_sequence_less(const Activation& a, const Activation& b) {
  // Ascending slot sequences compared lexicographically; at the first slot
  // where the sets differ, the set containing that slot has the smaller
  // element there, unless the other sequence already ended.
  const auto diff = a ^ b;
  if (diff.none()) return false;
  int t = 0;
  while (!diff.test(static_cast<std::size_t>(t))) ++t;
  // Sets of equal cardinality never run out before a difference.
  return a.test(static_cast<std::size_t>(t));
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput(std::string(name) + " must be a probability in [0, 1]");
}

OptimizerResult finish(const Problem& problem, const TariffDay& tariff, const Genome& best, Money best_cost,
                       std::vector<Money> history, std::uint64_t evaluations, std::uint64_t seed) {
  OptimizerResult out;
  out.schedule = problem.decode(best);
  out.cost = total_cost(out.schedule, tariff, problem.scenario());
  if (out.cost.total != best_cost) {
    throw std::logic_error("cost table and schedule cost disagree: " + best_cost.to_cents_string() + " vs " +
                           out.cost.total.to_cents_string());
  }
  out.best_cost_history = std::move(history);
  out.evaluations = evaluations;
  out.seed = seed;
  return out;
}

OptimizerResult fixed_only(const Problem& problem, const TariffDay& tariff, std::uint64_t seed) {
  const CostModel model(problem, tariff);
  const Genome empty;
  return finish(problem, tariff, empty, model.evaluate(empty), {model.evaluate(empty)}, 1, seed);
}

/// k-th set (want_set) or clear bit of the low 24 bits of `mask`.
int nth_slot(std::uint32_t mask, std::uint64_t k, bool want_set) {
  for (int t = 0; t < kSlotsPerDay; ++t) {
    if (((mask >> t) & 1U) == static_cast<std::uint32_t>(want_set)) {
      if (k == 0) return t;
      --k;
    }
  }
  throw std::logic_error("slot index out of range");
}

std::uint32_t random_subset(Rng& rng, int size) {
  std::array<int, kSlotsPerDay> slots;
  std::iota(slots.begin(), slots.end(), 0);
  std::uint32_t mask = 0;
  for (int k = 0; k < size; ++k) {
    const auto j = static_cast<std::size_t>(k) + rng.below(static_cast<std::uint64_t>(kSlotsPerDay - k));
    std::swap(slots[static_cast<std::size_t>(k)], slots[j]);
    mask |= 1U << slots[static_cast<std::size_t>(k)];
  }
  return mask;
}

/// Moves one active slot to one inactive slot. No-op draw when the
/// appliance runs all day.
std::uint32_t swap_one_slot(Rng& rng, std::uint32_t mask, int size) {
  if (size >= kSlotsPerDay) return mask;
  const int on = nth_slot(mask, rng.below(static_cast<std::uint64_t>(size)), true);
  const int off = nth_slot(mask, rng.below(static_cast<std::uint64_t>(kSlotsPerDay - size)), false);
  return (mask & ~(1U << on)) | (1U << off);
}

/// Each active slot moves to a uniformly drawn inactive slot with
/// probability `rate`; one coin per originally active slot, ascending.
std::uint32_t mutate_slots(Rng& rng, std::uint32_t mask, int size, double rate) {
  if (size >= kSlotsPerDay) return mask;
  const std::uint32_t original = mask;
  for (int t = 0; t < kSlotsPerDay; ++t) {
    if (((original >> t) & 1U) == 0 || !rng.chance(rate)) continue;
    const int off = nth_slot(mask, rng.below(static_cast<std::uint64_t>(kSlotsPerDay - size)), false);
    mask = (mask & ~(1U << t)) | (1U << off);
  }
  return mask;
}

/// Uniform crossover for slot sets of equal size: slots both parents use are
/// kept, the rest are drawn without replacement from slots exactly one
/// parent uses.
std::uint32_t set_crossover(Rng& rng, std::uint32_t a, std::uint32_t b, int size) {
  std::uint32_t child = a & b;
  std::uint32_t pool = a ^ b;
  for (int missing = size - detail::popcount(child); missing > 0; --missing) {
    const int slot = nth_slot(pool, rng.below(static_cast<std::uint64_t>(detail::popcount(pool))), true);
    child |= 1U << slot;
    pool &= ~(1U << slot);
  }
  return child;
}

std::uint32_t random_value(Rng& rng, const detail::Variable& v) {
  if (v.interruptible) return random_subset(rng, v.length);
  return static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(kSlotsPerDay - v.length + 1)));
}

Genome random_genome(Rng& rng, const Problem& problem) {
  Genome g(problem.size());
  for (std::size_t i = 0; i < problem.size(); ++i) g[i] = random_value(rng, problem.variables()[i]);
  problem.repair(g);
  return g;
}

constexpr int kDuplicateRetries = 8;

/// Index of the lowest cost; ties go to the lowest index.
std::size_t best_index(const std::vector<Money>& costs) {
  return static_cast<std::size_t>(std::min_element(costs.begin(), costs.end()) - costs.begin());
}

}  // namespace

bool Candidate::lexicographically_less(const Candidate& other) const {
  // Canonical order interleaves both maps by id.
  auto s1 = starts.begin();
  auto s2 = other.starts.begin();
  auto m1 = slot_sets.begin();
  auto m2 = other.slot_sets.begin();
  while (true) {
    const bool starts_left = s1 != starts.end() && s2 != other.starts.end();
    const bool sets_left = m1 != slot_sets.end() && m2 != other.slot_sets.end();
    if (!starts_left && !sets_left) return false;
    const bool take_start = starts_left && (!sets_left || s1->first < m1->first);
    if (take_start) {
      if (s1->second != s2->second) return s1->second < s2->second;
      ++s1;
      ++s2;
    } else {
      if (m1->second != m2->second) return slot_sequence_less(m1->second, m2->second);
      ++m1;
      ++m2;
    }
  }
}

void GAParams::validate() const {
  if (population_size < 1) throw InvalidInput("population_size must be positive");
  if (generations < 1) throw InvalidInput("generations must be positive");
  if (tournament_size < 1 || tournament_size > population_size) {
    throw InvalidInput("tournament_size must be in [1, population_size]");
  }
  check_probability(crossover_rate, "crossover_rate");
  check_probability(mutation_rate, "mutation_rate");
}

void HSAParams::validate() const {
  if (harmony_memory_size < 1) throw InvalidInput("harmony_memory_size must be positive");
  if (max_improvisations < 1) throw InvalidInput("max_improvisations must be positive");
  check_probability(hmcr, "hmcr");
  check_probability(par, "par");
}

RepairOutcome repair_precedence(const Candidate& candidate, const HouseholdScenario& scenario) {
  const Problem problem(scenario);
  Genome g = problem.encode(candidate);
  RepairOutcome out;
  for (int i : problem.repair(g)) out.overflowed.push_back(problem.variables()[static_cast<std::size_t>(i)].appliance->id);
  out.candidate = problem.to_candidate(g);
  return out;
}

Schedule decode(const Candidate& candidate, const HouseholdScenario& scenario) {
  const Problem problem(scenario);
  Genome g = problem.encode(candidate);
  problem.repair(g);
  return problem.decode(g);
}

Money fitness(const Candidate& candidate, const HouseholdScenario& scenario, const TariffDay& tariff) {
  const Problem problem(scenario);
  Genome g = problem.encode(candidate);
  problem.repair(g);
  return CostModel(problem, tariff).evaluate(g);
}

OptimizerResult baseline_result(const HouseholdScenario& scenario, const TariffDay& tariff) {
  OptimizerResult out;
  out.schedule = scenario.baseline();
  out.cost = total_cost(out.schedule, tariff, scenario);
  out.best_cost_history = {out.cost.total};
  out.evaluations = 1;
  return out;
}

// Draw order per run: initial population genome by genome (variables in
// canonical order). Then per generation and per child: tournament draws for
// parent 1, then parent 2, the crossover coin; when crossing over, per
// variable either one gene-source coin (start) or the set-crossover fill
// draws (slot set); then per variable a mutation coin followed by the
// mutation's own draws (a start has one mutation coin, a slot set one coin
// per active slot); finally, while the child duplicates an accepted member,
// a variable index and that variable's forced mutation.
OptimizerResult ga_optimize(const HouseholdScenario& scenario, const TariffDay& tariff, const GAParams& params) {
  params.validate();
  const Problem problem(scenario);
  if (problem.size() == 0) return fixed_only(problem, tariff, params.seed);
  const CostModel model(problem, tariff);
  Rng rng(params.seed);

  const auto pop_size = static_cast<std::size_t>(params.population_size);
  std::vector<Genome> population;
  std::vector<Money> costs;
  population.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    population.push_back(random_genome(rng, problem));
    costs.push_back(model.evaluate(population.back()));
  }
  std::uint64_t evaluations = pop_size;
  std::vector<Money> history;
  history.reserve(static_cast<std::size_t>(params.generations) + 1);
  history.push_back(costs[best_index(costs)]);

  auto tournament = [&]() -> std::size_t {
    std::size_t winner = rng.below(pop_size);
    for (int k = 1; k < params.tournament_size; ++k) {
      const std::size_t challenger = rng.below(pop_size);
      if (costs[challenger] < costs[winner] || (costs[challenger] == costs[winner] && challenger < winner)) {
        winner = challenger;
      }
    }
    return winner;
  };

  std::vector<Genome> next_population(pop_size);
  std::vector<Money> next_costs(pop_size);
  for (int gen = 0; gen < params.generations; ++gen) {
    const std::size_t elite = best_index(costs);
    next_population[0] = population[elite];
    next_costs[0] = costs[elite];
    for (std::size_t i = 1; i < pop_size; ++i) {
      const Genome& p1 = population[tournament()];
      const Genome& p2 = population[tournament()];
      Genome child = p1;
      if (rng.chance(params.crossover_rate)) {
        for (std::size_t v = 0; v < child.size(); ++v) {
          const auto& var = problem.variables()[v];
          if (var.interruptible) {
            child[v] = set_crossover(rng, p1[v], p2[v], var.length);
          } else if (rng.chance(0.5)) {
            child[v] = p2[v];
          }
        }
      }
      for (std::size_t v = 0; v < child.size(); ++v) {
        const auto& var = problem.variables()[v];
        if (var.interruptible) {
          child[v] = mutate_slots(rng, child[v], var.length, params.mutation_rate);
        } else if (rng.chance(params.mutation_rate)) {
          child[v] = random_value(rng, var);
        }
      }
      problem.repair(child);
      // Duplicate elimination: a child equal to an already accepted member
      // gets one forced mutation of a random variable, up to kDuplicateRetries.
      for (int retry = 0; retry < kDuplicateRetries; ++retry) {
        if (std::find(next_population.begin(), next_population.begin() + static_cast<std::ptrdiff_t>(i), child) ==
            next_population.begin() + static_cast<std::ptrdiff_t>(i)) {
          break;
        }
        const std::size_t v = rng.below(child.size());
        const auto& var = problem.variables()[v];
        child[v] = var.interruptible ? swap_one_slot(rng, child[v], var.length) : random_value(rng, var);
        problem.repair(child);
      }
      next_costs[i] = model.evaluate(child);
      next_population[i] = std::move(child);
      ++evaluations;
    }
    std::swap(population, next_population);
    std::swap(costs, next_costs);
    history.push_back(costs[best_index(costs)]);
  }
  const std::size_t best = best_index(costs);
  return finish(problem, tariff, population[best], costs[best], std::move(history), evaluations, params.seed);
}

// Draw order per run: initial memory harmony by harmony. Then per
// improvisation and per variable: the memory-consideration coin; if taken,
// the memory index, the pitch-adjust coin and the adjustment's draws;
// otherwise a fresh uniform value.
OptimizerResult hsa_optimize(const HouseholdScenario& scenario, const TariffDay& tariff, const HSAParams& params) {
  params.validate();
  const Problem problem(scenario);
  if (problem.size() == 0) return fixed_only(problem, tariff, params.seed);
  const CostModel model(problem, tariff);
  Rng rng(params.seed);

  const auto memory_size = static_cast<std::size_t>(params.harmony_memory_size);
  std::vector<Genome> memory;
  std::vector<Money> costs;
  memory.reserve(memory_size);
  for (std::size_t i = 0; i < memory_size; ++i) {
    memory.push_back(random_genome(rng, problem));
    costs.push_back(model.evaluate(memory.back()));
  }
  std::uint64_t evaluations = memory_size;
  std::size_t best = best_index(costs);
  std::vector<Money> history;
  history.reserve(static_cast<std::size_t>(params.max_improvisations) + 1);
  history.push_back(costs[best]);

  Genome harmony(problem.size());
  for (int it = 0; it < params.max_improvisations; ++it) {
    for (std::size_t v = 0; v < problem.size(); ++v) {
      const auto& var = problem.variables()[v];
      if (!rng.chance(params.hmcr)) {
        harmony[v] = random_value(rng, var);
        continue;
      }
      std::uint32_t value = memory[rng.below(memory_size)][v];
      if (rng.chance(params.par)) {
        if (var.interruptible) {
          value = swap_one_slot(rng, value, var.length);
        } else {
          const int step = rng.below(2) == 0 ? -1 : 1;
          value = static_cast<std::uint32_t>(std::clamp(static_cast<int>(value) + step, 0, kSlotsPerDay - var.length));
        }
      }
      harmony[v] = value;
    }
    problem.repair(harmony);
    const Money cost = model.evaluate(harmony);
    ++evaluations;
    // Worst member: highest cost, ties to the highest index.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < memory_size; ++i) {
      if (costs[i] >= costs[worst]) worst = i;
    }
    if (cost < costs[worst]) {
      memory[worst] = harmony;
      costs[worst] = cost;
      best = best_index(costs);
    }
    history.push_back(costs[best]);
  }
  return finish(problem, tariff, memory[best], costs[best], std::move(history), evaluations, params.seed);
}

namespace {

long double binomial(int n, int k) {
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All k-subsets of the 24 slots, ordered lexicographically by their
/// ascending slot sequences.
std::vector<std::uint32_t> combinations_in_order(int k) {
  std::vector<std::uint32_t> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::uint32_t mask = 0;
    for (int t : idx) mask |= 1U << t;
    out.push_back(mask);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == kSlotsPerDay - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

long double search_space_size(const HouseholdScenario& scenario) {
  long double size = 1;
  for (const auto& a : scenario.appliances()) {
    if (a.kind == ApplianceKind::FlexibleUninterruptible) size *= kSlotsPerDay - a.operating_slots + 1;
    if (a.kind == ApplianceKind::FlexibleInterruptible) size *= binomial(kSlotsPerDay, a.operating_slots);
  }
  return size;
}

OptimizerResult brute_force_optimize(const HouseholdScenario& scenario, const TariffDay& tariff, std::uint64_t limit) {
  const long double size = search_space_size(scenario);
  if (size > static_cast<long double>(limit)) throw SearchSpaceTooLarge(size, limit);
  const Problem problem(scenario);
  if (problem.size() == 0) return fixed_only(problem, tariff, 0);
  const CostModel model(problem, tariff);

  const std::size_t n = problem.size();
  std::vector<std::vector<std::uint32_t>> options(n);
  std::vector<std::vector<Money>> option_costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = problem.variables()[i];
    if (v.interruptible) {
      options[i] = combinations_in_order(v.length);
      for (std::uint32_t m : options[i]) option_costs[i].push_back(model.mask_cost(i, m));
    } else {
      for (int s = 0; s + v.length <= kSlotsPerDay; ++s) options[i].push_back(static_cast<std::uint32_t>(s));
    }
  }

  // Odometer over option indices; the last variable turns fastest, so the
  // first strictly better candidate seen is the lexicographically smallest.
  std::vector<std::size_t> position(n, 0);
  Genome current(n);
  Genome best;
  Money best_cost{};
  bool have_best = false;
  std::uint64_t evaluations = 0;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) current[i] = options[i][position[i]];
    if (problem.has_precedence()) problem.repair(current);
    Money cost = model.fixed_cost();
    for (std::size_t i = 0; i < n; ++i) {
      cost += problem.variables()[i].interruptible ? option_costs[i][position[i]]
                                                   : model.start_cost(i, static_cast<int>(current[i]));
    }
    ++evaluations;
    if (!have_best || cost < best_cost) {
      best = current;
      best_cost = cost;
      have_best = true;
    }
    bool wrapped = true;
    for (std::size_t i = n; i-- > 0;) {
      if (++position[i] < options[i].size()) {
        wrapped = false;
        break;
      }
      position[i] = 0;
    }
    if (wrapped) break;
  }
  return finish(problem, tariff, best, best_cost, {best_cost}, evaluations, 0);
}

}  // namespace hemsim
