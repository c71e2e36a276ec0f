#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "hemsim/domain.hpp"

namespace hemsim {

using Factor = boost::rational<std::int64_t>;

/// Multiplies prices by `factor` on `slots` (every slot when empty).
struct ScaleAttack {
  Factor factor{1};
  std::optional<Activation> slots;

  bool operator==(const ScaleAttack&) const = default;
};

/// Replays old prices: forged[t] = true[(t - hours) mod 24].
struct DelayAttack {
  int hours = 0;

  bool operator==(const DelayAttack&) const = default;
};

/// Overwrites the price on `slots` with `new_price`.
struct PeakLowerAttack {
  Price new_price;
  Activation slots;

  bool operator==(const PeakLowerAttack&) const = default;
};

/// Swaps prices between `from` and `to`, pairing both sets in ascending
/// slot order.
struct PeakShiftAttack {
  Activation from;
  Activation to;

  bool operator==(const PeakShiftAttack&) const = default;
};

using AttackSpec = std::variant<ScaleAttack, DelayAttack, PeakLowerAttack, PeakShiftAttack>;

/// Throws InvalidAttack when the spec breaks its own invariants.
void validate_attack(const AttackSpec& attack, int index = -1);

TariffDay apply_attack(const TariffDay& tariff, const AttackSpec& attack);

/// Left-to-right composition. Prices stay exact rationals between steps and
/// are rounded to tenths of a cent (half up) only at the end.
TariffDay compose_attacks(const TariffDay& tariff, const std::vector<AttackSpec>& attacks);

/// Compact text form:
///   scale:<factor>[@<slots>]   factor as decimal ("1.5") or ratio ("3/2")
///   delay:<hours>
///   lower:<cents>@<slots>
///   shift:<slots>><slots>
/// where <slots> is a comma list of hours or inclusive ranges, e.g. 7-10,18-19.
AttackSpec parse_attack(const std::string& text);
std::string format_attack(const AttackSpec& attack);

std::string format_slots(const Activation& slots);
Activation parse_slots(const std::string& text);

}  // namespace hemsim
