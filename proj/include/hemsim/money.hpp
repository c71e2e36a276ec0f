#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace hemsim {

inline constexpr int kSlotsPerDay = 24;

/// Energy drawn in one hourly slot, stored as integer watt-hours.
struct Energy {
  std::int64_t wh = 0;

  static Energy from_kwh(std::string_view decimal);
  std::string to_kwh_string() const;

  auto operator<=>(const Energy&) const = default;
};

/// Tariff price in integer tenths of a cent per kWh.
struct Price {
  std::int64_t tenths = 0;

  static Price from_cents(std::string_view decimal);
  std::string to_cents_string() const;

  auto operator<=>(const Price&) const = default;
};

/// Money in integer units of 1/10000 cent.
///
/// Energy (Wh) times Price (tenths of a cent per kWh) lands exactly on this
/// unit, so every hourly cost and every sum of hourly costs is exact.
struct Money {
  static constexpr std::int64_t kUnitsPerCent = 10000;
  static constexpr std::int64_t kUnitsPerTenth = 1000;

  std::int64_t units = 0;

  static constexpr Money from_tenths(std::int64_t tenths) { return Money{tenths * kUnitsPerTenth}; }
  static constexpr Money from_cents(std::int64_t cents) { return Money{cents * kUnitsPerCent}; }
  static Money parse_cents(std::string_view decimal);

  double cents() const { return static_cast<double>(units) / kUnitsPerCent; }
  /// Cents with four decimals, e.g. "356.0000".
  std::string to_cents_string() const;

  constexpr Money& operator+=(Money other) {
    units += other.units;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return Money{a.units + b.units}; }
  friend constexpr Money operator-(Money a, Money b) { return Money{a.units - b.units}; }
  friend constexpr Money operator*(Money a, std::int64_t k) { return Money{a.units * k}; }
  auto operator<=>(const Money&) const = default;
};

constexpr Money cost_of(Energy energy, Price price) { return Money{energy.wh * price.tenths}; }

/// Parses a non-negative decimal literal into an integer scaled by 10^decimals.
/// Rejects literals that carry non-zero digits beyond `decimals`.
std::int64_t parse_scaled_decimal(std::string_view text, int decimals);

/// Formats `value / 10^decimals` with exactly `decimals` fractional digits.
std::string format_scaled_decimal(std::int64_t value, int decimals);

}  // namespace hemsim
