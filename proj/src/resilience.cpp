#include "hemsim/resilience.hpp"

#include <cstdlib>

#include <boost/multiprecision/cpp_int.hpp>

#include "hemsim/errors.hpp"

namespace hemsim {

Percent resilience_index(Money c_attacked, Money c_clean) {
  if (c_clean.units < 0 || c_attacked.units < 0) throw InvalidInput("costs must be non-negative");
  if (c_clean.units == 0) throw UndefinedRI();
  const std::int64_t deviation = std::llabs(c_attacked.units - c_clean.units);
  return Percent(100) - Percent(100 * deviation, c_clean.units);
}

double to_double(const Percent& p) { return static_cast<double>(p.numerator()) / static_cast<double>(p.denominator()); }

std::string format_percent(const Percent& p) {
  constexpr std::int64_t kScale = 10000;
  const bool negative = p < 0;
  const Percent magnitude = negative ? -p : p;
  // floor(|p| * 10^4 + 1/2) without overflowing the numerator product.
  const std::int64_t num = magnitude.numerator();
  const std::int64_t den = magnitude.denominator();
  const std::int64_t whole = num / den;
  const std::int64_t rem = num % den;
  using Wide = boost::multiprecision::int128_t;
  const auto frac = static_cast<std::int64_t>((Wide(rem) * kScale * 2 + den) / (Wide(den) * 2));
  const std::int64_t scaled = whole * kScale + frac;
  return format_scaled_decimal(negative ? -scaled : scaled, 4);
}

}  // namespace hemsim
