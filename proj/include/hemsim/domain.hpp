#pragma once

#include <array>
#include <bitset>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hemsim/money.hpp"

namespace hemsim {

/// One bit per hourly slot; bit t set means active during hour t.
using Activation = std::bitset<kSlotsPerDay>;

enum class ApplianceKind { Fixed, FlexibleUninterruptible, FlexibleInterruptible };
enum class Band { OffPeak, MidPeak, Peak };
enum class Season { Summer, Winter };

const char* to_string(ApplianceKind kind);
const char* to_string(Band band);
const char* to_string(Season season);

/// Activation as a 24-character string of '0'/'1', hour 0 first.
std::string activation_to_string(const Activation& bits);
Activation activation_from_string(const std::string& text);
std::vector<int> active_slots(const Activation& bits);
/// First and last active slot, or nullopt when nothing is active.
std::optional<std::pair<int, int>> active_span(const Activation& bits);
bool is_contiguous(const Activation& bits);
Activation contiguous_run(int start, int length);

struct Appliance {
  std::string id;
  ApplianceKind kind = ApplianceKind::Fixed;
  Energy power_rating;
  int operating_slots = 0;
  std::optional<Activation> fixed_profile;

  bool is_flexible() const { return kind != ApplianceKind::Fixed; }
  /// Throws InvalidInput when a field breaks an invariant.
  void validate() const;

  bool operator==(const Appliance&) const = default;
};

class TariffDay {
 public:
  TariffDay(std::array<Price, kSlotsPerDay> prices, std::array<Band, kSlotsPerDay> bands, Season season);

  /// A single price in every slot, labelled off-peak.
  static TariffDay flat(Price price, Season season = Season::Winter);

  const std::array<Price, kSlotsPerDay>& prices() const { return prices_; }
  const std::array<Band, kSlotsPerDay>& bands() const { return bands_; }
  Season season() const { return season_; }
  Price price(int slot) const { return prices_[static_cast<std::size_t>(slot)]; }

  bool operator==(const TariffDay&) const = default;

 private:
  std::array<Price, kSlotsPerDay> prices_;
  std::array<Band, kSlotsPerDay> bands_;
  Season season_;
};

struct Schedule {
  std::map<std::string, Activation> assignment;

  bool operator==(const Schedule&) const = default;
};

struct PrecedencePair {
  std::string predecessor;
  std::string successor;

  bool operator==(const PrecedencePair&) const = default;
};

/// Immutable set of appliances plus precedence rules and a "without HEMS"
/// baseline. Appliances are held in canonical order (lexicographic by id).
class HouseholdScenario {
 public:
  /// Validates every invariant, including baseline feasibility.
  /// Throws InvalidInput on structural problems and InfeasibleSchedule when
  /// only the baseline is at fault.
  HouseholdScenario(std::vector<Appliance> appliances, std::vector<PrecedencePair> precedence, Schedule baseline);

  const std::vector<Appliance>& appliances() const { return appliances_; }
  const std::vector<PrecedencePair>& precedence() const { return precedence_; }
  const Schedule& baseline() const { return baseline_; }

  const Appliance* find(const std::string& id) const;
  const Appliance& at(const std::string& id) const;
  bool has_flexible() const;

  /// Scenario built from the same appliances and precedence with the given
  /// baseline (validated like the constructor).
  HouseholdScenario with_baseline(Schedule baseline) const;

  bool operator==(const HouseholdScenario&) const = default;

 private:
  std::vector<Appliance> appliances_;
  std::vector<PrecedencePair> precedence_;
  Schedule baseline_;
};

enum class Rule { MissingAppliance, UnknownAppliance, Cardinality, FixedProfile, Contiguity, Precedence };
const char* to_string(Rule rule);

struct Violation {
  std::string appliance;
  Rule rule;
  std::vector<int> slots;
  std::string message;
};

struct CostBreakdown {
  std::array<Money, kSlotsPerDay> hourly{};
  Money total;

  bool operator==(const CostBreakdown&) const = default;
};

/// Checks every schedule rule; an empty result means feasible.
std::vector<Violation> validate_schedule(const Schedule& schedule, const HouseholdScenario& scenario);

/// hourly[t] = sum of power_rating * price[t] over appliances active at t.
/// Throws InfeasibleSchedule when validate_schedule reports anything.
CostBreakdown total_cost(const Schedule& schedule, const TariffDay& tariff, const HouseholdScenario& scenario);

/// The eight-appliance household with its default baseline.
HouseholdScenario make_table1_scenario();

/// Shipped default tariffs. Only the winter peak price is sourced; the other
/// band prices are placeholders.
TariffDay make_default_tariff(Season season);

}  // namespace hemsim
