#include "hemsim/attack.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>

#include "hemsim/errors.hpp"

namespace hemsim {

namespace {

using Exact = boost::multiprecision::cpp_rational;
using ExactPrices = std::array<Exact, kSlotsPerDay>;

Activation all_slots() { return Activation().set(); }

void step(ExactPrices& prices, const AttackSpec& attack) {
  std::visit(
      [&prices](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ScaleAttack>) {
          const Exact factor(a.factor.numerator(), a.factor.denominator());
          const Activation slots = a.slots.value_or(all_slots());
          for (int t = 0; t < kSlotsPerDay; ++t) {
            if (slots.test(static_cast<std::size_t>(t))) prices[static_cast<std::size_t>(t)] *= factor;
          }
        } else if constexpr (std::is_same_v<T, DelayAttack>) {
          ExactPrices out;
          for (int t = 0; t < kSlotsPerDay; ++t) {
            out[static_cast<std::size_t>(t)] = prices[static_cast<std::size_t>((t - a.hours + kSlotsPerDay) % kSlotsPerDay)];
          }
          prices = out;
        } else if constexpr (std::is_same_v<T, PeakLowerAttack>) {
          for (int t = 0; t < kSlotsPerDay; ++t) {
            if (a.slots.test(static_cast<std::size_t>(t))) prices[static_cast<std::size_t>(t)] = Exact(a.new_price.tenths);
          }
        } else {
          const auto from = active_slots(a.from);
          const auto to = active_slots(a.to);
          for (std::size_t i = 0; i < from.size(); ++i) {
            std::swap(prices[static_cast<std::size_t>(from[i])], prices[static_cast<std::size_t>(to[i])]);
          }
        }
      },
      attack);
}

}  // namespace

void validate_attack(const AttackSpec& attack, int index) {
  std::visit(
      [index](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ScaleAttack>) {
          if (a.factor <= 0) throw InvalidAttack("scale factor must be positive", index);
          if (a.slots && a.slots->none()) throw InvalidAttack("scale attack has an empty slot set", index);
        } else if constexpr (std::is_same_v<T, DelayAttack>) {
          if (a.hours < 0 || a.hours >= kSlotsPerDay) throw InvalidAttack("delay hours must be in [0, 24)", index);
        } else if constexpr (std::is_same_v<T, PeakLowerAttack>) {
          if (a.new_price.tenths <= 0) throw InvalidAttack("lowered price must be positive", index);
          if (a.slots.none()) throw InvalidAttack("lower attack has an empty slot set", index);
        } else {
          if (a.from.count() != a.to.count()) throw InvalidAttack("shift slot sets differ in size", index);
          if ((a.from & a.to).any()) throw InvalidAttack("shift slot sets overlap", index);
          if (a.from.none()) throw InvalidAttack("shift attack has an empty slot set", index);
        }
      },
      attack);
}

TariffDay apply_attack(const TariffDay& tariff, const AttackSpec& attack) {
  return compose_attacks(tariff, {attack});
}

TariffDay compose_attacks(const TariffDay& tariff, const std::vector<AttackSpec>& attacks) {
  ExactPrices prices;
  for (int t = 0; t < kSlotsPerDay; ++t) prices[static_cast<std::size_t>(t)] = Exact(tariff.price(t).tenths);
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    validate_attack(attacks[i], static_cast<int>(i));
    step(prices, attacks[i]);
  }
  std::array<Price, kSlotsPerDay> out;
  for (int t = 0; t < kSlotsPerDay; ++t) {
    const Exact& p = prices[static_cast<std::size_t>(t)];
    // Round half up: floor(p + 1/2).
    const Exact shifted = p + Exact(1, 2);
    boost::multiprecision::cpp_int q = numerator(shifted) / denominator(shifted);
    const auto tenths = q.convert_to<std::int64_t>();
    if (tenths <= 0) {
      throw InvalidAttack("forged price at hour " + std::to_string(t) + " rounds to zero",
                          attacks.empty() ? -1 : static_cast<int>(attacks.size()) - 1);
    }
    out[static_cast<std::size_t>(t)] = Price{tenths};
  }
  return TariffDay(out, tariff.bands(), tariff.season());
}

std::string format_slots(const Activation& slots) {
  std::string out;
  int t = 0;
  while (t < kSlotsPerDay) {
    if (!slots.test(static_cast<std::size_t>(t))) {
      ++t;
      continue;
    }
    int end = t;
    while (end + 1 < kSlotsPerDay && slots.test(static_cast<std::size_t>(end + 1))) ++end;
    if (!out.empty()) out += ",";
    out += end == t ? std::to_string(t) : std::to_string(t) + "-" + std::to_string(end);
    t = end + 1;
  }
  return out;
}

namespace {

int parse_hour(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      text.size() > 2) {
    throw InvalidAttack("bad slot '" + text + "'");
  }
  const int h = std::stoi(text);
  if (h >= kSlotsPerDay) throw InvalidAttack("slot " + text + " out of range [0, 24)");
  return h;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const auto pos = text.find(sep, begin);
    parts.push_back(text.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin));
    if (pos == std::string::npos) break;
    begin = pos + 1;
  }
  return parts;
}

Factor parse_factor(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const auto num = parse_scaled_decimal(text.substr(0, slash), 0);
      const auto den = parse_scaled_decimal(text.substr(slash + 1), 0);
      if (den == 0) throw InvalidAttack("zero denominator in factor '" + text + "'");
      return Factor(num, den);
    }
    const auto dot = text.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
    if (decimals > 9) throw InvalidAttack("factor '" + text + "' has too many decimals");
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    return Factor(parse_scaled_decimal(text, decimals), scale);
  } catch (const InvalidAttack&) {
    throw;
  } catch (const InvalidInput& e) {
    throw InvalidAttack(e.what());
  }
}

std::string format_factor(const Factor& f) {
  std::int64_t scale = 1;
  for (int decimals = 0; decimals <= 9; ++decimals) {
    if (scale % f.denominator() == 0) return format_scaled_decimal(f.numerator() * (scale / f.denominator()), decimals);
    scale *= 10;
  }
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

}  // namespace

Activation parse_slots(const std::string& text) {
  Activation slots;
  for (const auto& item : split(text, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      slots.set(static_cast<std::size_t>(parse_hour(item)));
      continue;
    }
    const int first = parse_hour(item.substr(0, dash));
    const int last = parse_hour(item.substr(dash + 1));
    if (last < first) throw InvalidAttack("slot range '" + item + "' is reversed");
    for (int t = first; t <= last; ++t) slots.set(static_cast<std::size_t>(t));
  }
  return slots;
}

AttackSpec parse_attack(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidAttack("attack '" + text + "' lacks a ':'");
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  const auto at = body.find('@');
  AttackSpec spec;
  if (kind == "scale") {
    ScaleAttack a;
    a.factor = parse_factor(body.substr(0, at));
    if (at != std::string::npos) a.slots = parse_slots(body.substr(at + 1));
    spec = a;
  } else if (kind == "delay") {
    try {
      spec = DelayAttack{static_cast<int>(parse_scaled_decimal(body, 0))};
    } catch (const InvalidInput& e) {
      throw InvalidAttack(e.what());
    }
  } else if (kind == "lower") {
    if (at == std::string::npos) throw InvalidAttack("lower attack needs '@<slots>'");
    try {
      spec = PeakLowerAttack{Price::from_cents(body.substr(0, at)), parse_slots(body.substr(at + 1))};
    } catch (const InvalidAttack&) {
      throw;
    } catch (const InvalidInput& e) {
      throw InvalidAttack(e.what());
    }
  } else if (kind == "shift") {
    const auto gt = body.find('>');
    if (gt == std::string::npos) throw InvalidAttack("shift attack needs '<from>><to>'");
    spec = PeakShiftAttack{parse_slots(body.substr(0, gt)), parse_slots(body.substr(gt + 1))};
  } else {
    throw InvalidAttack("unknown attack kind '" + kind + "'");
  }
  validate_attack(spec);
  return spec;
}

std::string format_attack(const AttackSpec& attack) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ScaleAttack>) {
          return "scale:" + format_factor(a.factor) + (a.slots ? "@" + format_slots(*a.slots) : "");
        } else if constexpr (std::is_same_v<T, DelayAttack>) {
          return "delay:" + std::to_string(a.hours);
        } else if constexpr (std::is_same_v<T, PeakLowerAttack>) {
          return "lower:" + a.new_price.to_cents_string() + "@" + format_slots(a.slots);
        } else {
          return "shift:" + format_slots(a.from) + ">" + format_slots(a.to);
        }
      },
      attack);
}

}  // namespace hemsim
