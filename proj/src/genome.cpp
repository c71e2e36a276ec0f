#include "genome.hpp"

#include <algorithm>
#include <map>

#include "hemsim/errors.hpp"

namespace hemsim::detail {

Problem::Problem(const HouseholdScenario& scenario) : scenario_(&scenario) {
  std::map<std::string, int> index_of;
  for (const auto& a : scenario.appliances()) {
    if (!a.is_flexible()) continue;
    Variable v;
    v.appliance = &a;
    v.interruptible = a.kind == ApplianceKind::FlexibleInterruptible;
    v.length = a.operating_slots;
    v.latest_start = kSlotsPerDay - a.operating_slots;
    index_of[a.id] = static_cast<int>(variables_.size());
    variables_.push_back(std::move(v));
  }
  std::vector<std::vector<int>> successors(variables_.size());
  for (const auto& p : scenario.precedence()) {
    const int pred = index_of.at(p.predecessor);
    const int succ = index_of.at(p.successor);
    variables_[static_cast<std::size_t>(succ)].predecessors.push_back(pred);
    successors[static_cast<std::size_t>(pred)].push_back(succ);
    has_precedence_ = true;
  }

  // Kahn's algorithm, always taking the lowest ready index.
  std::vector<int> indegree(variables_.size(), 0);
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    indegree[i] = static_cast<int>(variables_[i].predecessors.size());
  }
  std::vector<int> ready;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
  }
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    const int v = *it;
    ready.erase(it);
    topo_order_.push_back(v);
    for (int s : successors[static_cast<std::size_t>(v)]) {
      if (--indegree[static_cast<std::size_t>(s)] == 0) ready.push_back(s);
    }
  }

  // Latest feasible start, propagated backwards from each successor.
  for (auto it = topo_order_.rbegin(); it != topo_order_.rend(); ++it) {
    auto& v = variables_[static_cast<std::size_t>(*it)];
    for (int s : successors[static_cast<std::size_t>(*it)]) {
      v.latest_start = std::min(v.latest_start, variables_[static_cast<std::size_t>(s)].latest_start - v.length);
    }
  }
}

std::vector<int> Problem::repair(Genome& genome) const {
  std::vector<int> clamped;
  if (!has_precedence_) return clamped;
  for (int i : topo_order_) {
    const auto& v = variables_[static_cast<std::size_t>(i)];
    if (v.interruptible) continue;
    int start = static_cast<int>(genome[static_cast<std::size_t>(i)]);
    for (int p : v.predecessors) {
      const auto& pv = variables_[static_cast<std::size_t>(p)];
      start = std::max(start, static_cast<int>(genome[static_cast<std::size_t>(p)]) + pv.length);
    }
    if (start > v.latest_start) {
      start = v.latest_start;
      clamped.push_back(i);
    }
    genome[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(start);
  }
  return clamped;
}

bool Problem::repair_quiet(Genome& genome) const { return !repair(genome).empty(); }

Schedule Problem::decode(const Genome& genome) const {
  Schedule out;
  for (const auto& a : scenario_->appliances()) {
    if (!a.is_flexible()) out.assignment.emplace(a.id, *a.fixed_profile);
  }
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& v = variables_[i];
    const Activation bits = v.interruptible ? Activation(genome[i]) : contiguous_run(static_cast<int>(genome[i]), v.length);
    out.assignment.emplace(v.appliance->id, bits);
  }
  return out;
}

Genome Problem::encode(const Candidate& candidate) const {
  std::size_t expected_starts = 0;
  std::size_t expected_sets = 0;
  Genome genome(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& v = variables_[i];
    const std::string& id = v.appliance->id;
    if (v.interruptible) {
      ++expected_sets;
      auto it = candidate.slot_sets.find(id);
      if (it == candidate.slot_sets.end()) throw EncodingMismatch("candidate has no slot set for '" + id + "'");
      if (static_cast<int>(it->second.count()) != v.length) {
        throw EncodingMismatch("slot set for '" + id + "' has " + std::to_string(it->second.count()) +
                               " slots, needs " + std::to_string(v.length));
      }
      genome[i] = static_cast<std::uint32_t>(it->second.to_ulong());
    } else {
      ++expected_starts;
      auto it = candidate.starts.find(id);
      if (it == candidate.starts.end()) throw EncodingMismatch("candidate has no start for '" + id + "'");
      if (it->second < 0 || it->second > kSlotsPerDay - v.length) {
        throw EncodingMismatch("start " + std::to_string(it->second) + " for '" + id + "' outside [0, " +
                               std::to_string(kSlotsPerDay - v.length) + "]");
      }
      genome[i] = static_cast<std::uint32_t>(it->second);
    }
  }
  if (candidate.starts.size() != expected_starts || candidate.slot_sets.size() != expected_sets) {
    throw EncodingMismatch("candidate names appliances that are not flexible members of the scenario");
  }
  return genome;
}

Candidate Problem::to_candidate(const Genome& genome) const {
  Candidate c;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& v = variables_[i];
    if (v.interruptible) {
      c.slot_sets.emplace(v.appliance->id, Activation(genome[i]));
    } else {
      c.starts.emplace(v.appliance->id, static_cast<int>(genome[i]));
    }
  }
  return c;
}

CostModel::CostModel(const Problem& problem, const TariffDay& tariff) : problem_(&problem) {
  for (const auto& a : problem.scenario().appliances()) {
    if (a.is_flexible()) continue;
    for (int t = 0; t < kSlotsPerDay; ++t) {
      if (a.fixed_profile->test(static_cast<std::size_t>(t))) fixed_ += cost_of(a.power_rating, tariff.price(t));
    }
  }
  start_costs_.resize(problem.size());
  slot_costs_.resize(problem.size());
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const auto& v = problem.variables()[i];
    for (int t = 0; t < kSlotsPerDay; ++t) {
      slot_costs_[i][static_cast<std::size_t>(t)] = cost_of(v.appliance->power_rating, tariff.price(t));
    }
    if (!v.interruptible) {
      for (int s = 0; s + v.length <= kSlotsPerDay; ++s) {
        Money run;
        for (int t = s; t < s + v.length; ++t) run += slot_costs_[i][static_cast<std::size_t>(t)];
        start_costs_[i].push_back(run);
      }
    }
  }
}

Money CostModel::mask_cost(std::size_t var, std::uint32_t mask) const {
  Money total;
  while (mask != 0) {
    const int t = __builtin_ctz(mask);
    total += slot_costs_[var][static_cast<std::size_t>(t)];
    mask &= mask - 1;
  }
  return total;
}

Money CostModel::evaluate(const Genome& genome) const {
  Money total = fixed_;
  for (std::size_t i = 0; i < genome.size(); ++i) {
    if (problem_->variables()[i].interruptible) {
      total += mask_cost(i, genome[i]);
    } else {
      total += start_costs_[i][genome[i]];
    }
  }
  return total;
}

}  // namespace hemsim::detail
