#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "hemsim/money.hpp"

namespace hemsim {

/// An exact percentage.
using Percent = boost::rational<std::int64_t>;

/// RI = 100 - 100 * |c_attacked - c_clean| / c_clean, exact.
/// Throws UndefinedRI when c_clean is zero and InvalidInput for negative costs.
Percent resilience_index(Money c_attacked, Money c_clean);

double to_double(const Percent& p);
/// Four decimals, rounded half away from zero, e.g. "98.2000".
std::string format_percent(const Percent& p);

}  // namespace hemsim
