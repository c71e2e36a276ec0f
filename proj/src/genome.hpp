#pragma once

// Compact integer encoding shared by the optimizers. One value per flexible
// appliance, in canonical appliance order: a start slot for uninterruptible
// appliances, a 24-bit slot mask for interruptible ones.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hemsim/domain.hpp"
#include "hemsim/schedulers.hpp"

namespace hemsim::detail {

using Genome = std::vector<std::uint32_t>;

struct Variable {
  const Appliance* appliance = nullptr;
  bool interruptible = false;
  int length = 0;  // operating slots
  int latest_start = 0;
  std::vector<int> predecessors;  // variable indices
};

class Problem {
 public:
  explicit Problem(const HouseholdScenario& scenario);

  const HouseholdScenario& scenario() const { return *scenario_; }
  const std::vector<Variable>& variables() const { return variables_; }
  std::size_t size() const { return variables_.size(); }
  bool has_precedence() const { return has_precedence_; }

  /// In-place precedence repair; returns the indices of clamped variables.
  std::vector<int> repair(Genome& genome) const;
  bool repair_quiet(Genome& genome) const;

  Schedule decode(const Genome& genome) const;
  /// Throws EncodingMismatch on id or domain mismatch. Does not repair.
  Genome encode(const Candidate& candidate) const;
  Candidate to_candidate(const Genome& genome) const;

 private:
  const HouseholdScenario* scenario_;
  std::vector<Variable> variables_;
  std::vector<int> topo_order_;
  bool has_precedence_ = false;
};

/// Exact cost of a genome under one tariff, from precomputed tables.
class CostModel {
 public:
  CostModel(const Problem& problem, const TariffDay& tariff);

  Money evaluate(const Genome& genome) const;
  Money fixed_cost() const { return fixed_; }
  Money start_cost(std::size_t var, int start) const { return start_costs_[var][static_cast<std::size_t>(start)]; }
  Money mask_cost(std::size_t var, std::uint32_t mask) const;

 private:
  const Problem* problem_;
  Money fixed_;
  std::vector<std::vector<Money>> start_costs_;
  std::vector<std::array<Money, kSlotsPerDay>> slot_costs_;
};

inline int popcount(std::uint32_t mask) { return __builtin_popcount(mask); }

}  // namespace hemsim::detail
