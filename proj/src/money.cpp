#include "hemsim/money.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "hemsim/errors.hpp"

namespace hemsim {

std::int64_t parse_scaled_decimal(std::string_view text, int decimals) {
  const std::string original(text);
  if (text.empty()) throw InvalidInput("empty numeric literal");
  if (text.front() == '+') text.remove_prefix(1);
  if (text.empty() || text.front() == '-') throw InvalidInput("expected a non-negative number, got '" + original + "'");

  std::int64_t value = 0;
  int fraction_digits = -1;
  bool any_digit = false;
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max() / 10;
  for (char c : text) {
    if (c == '.') {
      if (fraction_digits >= 0) throw InvalidInput("malformed number '" + original + "'");
      fraction_digits = 0;
      continue;
    }
    if (c < '0' || c > '9') throw InvalidInput("malformed number '" + original + "'");
    any_digit = true;
    const int digit = c - '0';
    if (fraction_digits >= 0) {
      if (fraction_digits >= decimals) {
        if (digit != 0) {
          throw InvalidInput("'" + original + "' has more than " + std::to_string(decimals) + " decimal digit(s)");
        }
        continue;
      }
      ++fraction_digits;
    }
    if (value > kMax) throw InvalidInput("number out of range '" + original + "'");
    value = value * 10 + digit;
  }
  if (!any_digit) throw InvalidInput("malformed number '" + original + "'");
  for (int i = std::max(fraction_digits, 0); i < decimals; ++i) {
    if (value > kMax) throw InvalidInput("number out of range '" + original + "'");
    value *= 10;
  }
  return value;
}

std::string format_scaled_decimal(std::int64_t value, int decimals) {
  const bool negative = value < 0;
  const std::uint64_t magnitude = negative ? 0 - static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value);
  std::uint64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  std::string frac = std::to_string(magnitude % scale);
  if (decimals > 0) frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
  std::string out = negative ? "-" : "";
  out += std::to_string(magnitude / scale);
  if (decimals > 0) out += "." + frac;
  return out;
}

Energy Energy::from_kwh(std::string_view decimal) { return Energy{parse_scaled_decimal(decimal, 3)}; }
std::string Energy::to_kwh_string() const { return format_scaled_decimal(wh, 3); }

Price Price::from_cents(std::string_view decimal) { return Price{parse_scaled_decimal(decimal, 1)}; }
std::string Price::to_cents_string() const { return format_scaled_decimal(tenths, 1); }

Money Money::parse_cents(std::string_view decimal) {
  if (!decimal.empty() && decimal.front() == '-') {
    return Money{-parse_scaled_decimal(decimal.substr(1), 4)};
  }
  return Money{parse_scaled_decimal(decimal, 4)};
}
std::string Money::to_cents_string() const { return format_scaled_decimal(units, 4); }

}  // namespace hemsim
