#include "hemsim/domain.hpp"

#include <algorithm>
#include <set>

#include "hemsim/errors.hpp"

namespace hemsim {

const char* to_string(ApplianceKind kind) {
  switch (kind) {
    case ApplianceKind::Fixed: return "fixed";
    case ApplianceKind::FlexibleUninterruptible: return "uninterruptible";
    case ApplianceKind::FlexibleInterruptible: return "interruptible";
  }
  return "?";
}

const char* to_string(Band band) {
  switch (band) {
    case Band::OffPeak: return "off_peak";
    case Band::MidPeak: return "mid_peak";
    case Band::Peak: return "peak";
  }
  return "?";
}

const char* to_string(Season season) { return season == Season::Summer ? "summer" : "winter"; }

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::MissingAppliance: return "missing_appliance";
    case Rule::UnknownAppliance: return "unknown_appliance";
    case Rule::Cardinality: return "cardinality";
    case Rule::FixedProfile: return "fixed_profile";
    case Rule::Contiguity: return "contiguity";
    case Rule::Precedence: return "precedence";
  }
  return "?";
}

std::string activation_to_string(const Activation& bits) {
  std::string out(kSlotsPerDay, '0');
  for (int t = 0; t < kSlotsPerDay; ++t) {
    if (bits.test(static_cast<std::size_t>(t))) out[static_cast<std::size_t>(t)] = '1';
  }
  return out;
}

Activation activation_from_string(const std::string& text) {
  if (text.size() != kSlotsPerDay) {
    throw InvalidInput("activation vector must have 24 characters, got " + std::to_string(text.size()));
  }
  Activation bits;
  for (int t = 0; t < kSlotsPerDay; ++t) {
    const char c = text[static_cast<std::size_t>(t)];
    if (c == '1') {
      bits.set(static_cast<std::size_t>(t));
    } else if (c != '0') {
      throw InvalidInput("activation vector may only contain '0' and '1'");
    }
  }
  return bits;
}

std::vector<int> active_slots(const Activation& bits) {
  std::vector<int> out;
  for (int t = 0; t < kSlotsPerDay; ++t) {
    if (bits.test(static_cast<std::size_t>(t))) out.push_back(t);
  }
  return out;
}

std::optional<std::pair<int, int>> active_span(const Activation& bits) {
  if (bits.none()) return std::nullopt;
  int first = 0;
  while (!bits.test(static_cast<std::size_t>(first))) ++first;
  int last = kSlotsPerDay - 1;
  while (!bits.test(static_cast<std::size_t>(last))) --last;
  return std::pair{first, last};
}

bool is_contiguous(const Activation& bits) {
  const auto span = active_span(bits);
  return !span || static_cast<int>(bits.count()) == span->second - span->first + 1;
}

Activation contiguous_run(int start, int length) {
  Activation bits;
  for (int t = start; t < start + length && t < kSlotsPerDay; ++t) {
    if (t >= 0) bits.set(static_cast<std::size_t>(t));
  }
  return bits;
}

void Appliance::validate() const {
  if (id.empty()) throw InvalidInput("appliance id must not be empty");
  if (power_rating.wh <= 0) throw InvalidInput("appliance '" + id + "': power_rating must be > 0");
  if (operating_slots < 1 || operating_slots > kSlotsPerDay) {
    throw InvalidInput("appliance '" + id + "': operating_slots must be in [1, 24]");
  }
  if (kind == ApplianceKind::Fixed) {
    if (!fixed_profile) throw InvalidInput("appliance '" + id + "': fixed appliance requires fixed_profile");
    if (static_cast<int>(fixed_profile->count()) != operating_slots) {
      throw InvalidInput("appliance '" + id + "': fixed_profile has " + std::to_string(fixed_profile->count()) +
                         " slots, operating_slots is " + std::to_string(operating_slots));
    }
  } else if (fixed_profile) {
    throw InvalidInput("appliance '" + id + "': fixed_profile is only allowed for fixed appliances");
  }
}

TariffDay::TariffDay(std::array<Price, kSlotsPerDay> prices, std::array<Band, kSlotsPerDay> bands, Season season)
    : prices_(prices), bands_(bands), season_(season) {
  for (int t = 0; t < kSlotsPerDay; ++t) {
    if (prices_[static_cast<std::size_t>(t)].tenths <= 0) {
      throw InvalidInput("tariff price at hour " + std::to_string(t) + " must be > 0");
    }
  }
}

TariffDay TariffDay::flat(Price price, Season season) {
  std::array<Price, kSlotsPerDay> prices;
  prices.fill(price);
  std::array<Band, kSlotsPerDay> bands;
  bands.fill(Band::OffPeak);
  return TariffDay(prices, bands, season);
}

namespace {

// Detects cycles among precedence pairs (ids already resolved).
bool has_cycle(const std::vector<PrecedencePair>& pairs) {
  std::map<std::string, std::vector<std::string>> next;
  std::map<std::string, int> indegree;
  for (const auto& p : pairs) {
    next[p.predecessor].push_back(p.successor);
    indegree[p.successor] += 1;
    indegree.try_emplace(p.predecessor, 0);
  }
  std::vector<std::string> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push_back(id);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::string id = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& s : next[id]) {
      if (--indegree[s] == 0) ready.push_back(s);
    }
  }
  return seen != indegree.size();
}

}  // namespace

HouseholdScenario::HouseholdScenario(std::vector<Appliance> appliances, std::vector<PrecedencePair> precedence,
                                     Schedule baseline)
    : appliances_(std::move(appliances)), precedence_(std::move(precedence)), baseline_(std::move(baseline)) {
  std::sort(appliances_.begin(), appliances_.end(),
            [](const Appliance& a, const Appliance& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < appliances_.size(); ++i) {
    appliances_[i].validate();
    if (i > 0 && appliances_[i - 1].id == appliances_[i].id) {
      throw InvalidInput("duplicate appliance id '" + appliances_[i].id + "'");
    }
  }
  for (const auto& p : precedence_) {
    for (const auto* id : {&p.predecessor, &p.successor}) {
      const Appliance* a = find(*id);
      if (a == nullptr) throw InvalidInput("precedence refers to unknown appliance '" + *id + "'");
      if (a->kind != ApplianceKind::FlexibleUninterruptible) {
        throw InvalidInput("precedence appliance '" + *id + "' must be uninterruptible");
      }
    }
    if (p.predecessor == p.successor) throw InvalidInput("precedence pair '" + p.predecessor + "' refers to itself");
  }
  if (has_cycle(precedence_)) throw InvalidInput("precedence pairs form a cycle");
  auto violations = validate_schedule(baseline_, *this);
  if (!violations.empty()) throw InfeasibleSchedule(std::move(violations));
}

const Appliance* HouseholdScenario::find(const std::string& id) const {
  auto it = std::lower_bound(appliances_.begin(), appliances_.end(), id,
                             [](const Appliance& a, const std::string& key) { return a.id < key; });
  return (it != appliances_.end() && it->id == id) ? &*it : nullptr;
}

const Appliance& HouseholdScenario::at(const std::string& id) const {
  const Appliance* a = find(id);
  if (a == nullptr) throw InvalidInput("unknown appliance '" + id + "'");
  return *a;
}

bool HouseholdScenario::has_flexible() const {
  return std::any_of(appliances_.begin(), appliances_.end(), [](const Appliance& a) { return a.is_flexible(); });
}

HouseholdScenario HouseholdScenario::with_baseline(Schedule baseline) const {
  return HouseholdScenario(appliances_, precedence_, std::move(baseline));
}

std::vector<Violation> validate_schedule(const Schedule& schedule, const HouseholdScenario& scenario) {
  std::vector<Violation> out;
  for (const auto& [id, bits] : schedule.assignment) {
    if (scenario.find(id) == nullptr) {
      out.push_back({id, Rule::UnknownAppliance, active_slots(bits), "appliance '" + id + "' is not in the scenario"});
    }
  }
  for (const auto& a : scenario.appliances()) {
    auto it = schedule.assignment.find(a.id);
    if (it == schedule.assignment.end()) {
      out.push_back({a.id, Rule::MissingAppliance, {}, "appliance '" + a.id + "' has no activation vector"});
      continue;
    }
    const Activation& bits = it->second;
    if (static_cast<int>(bits.count()) != a.operating_slots) {
      out.push_back({a.id, Rule::Cardinality, active_slots(bits),
                     "appliance '" + a.id + "' is active in " + std::to_string(bits.count()) + " slots, needs " +
                         std::to_string(a.operating_slots)});
    }
    if (a.kind == ApplianceKind::Fixed && bits != *a.fixed_profile) {
      out.push_back({a.id, Rule::FixedProfile, active_slots(bits ^ *a.fixed_profile),
                     "fixed appliance '" + a.id + "' deviates from its profile"});
    }
    if (a.kind == ApplianceKind::FlexibleUninterruptible && !is_contiguous(bits)) {
      out.push_back({a.id, Rule::Contiguity, active_slots(bits),
                     "uninterruptible appliance '" + a.id + "' does not run in one contiguous block"});
    }
  }
  for (const auto& p : scenario.precedence()) {
    auto pred = schedule.assignment.find(p.predecessor);
    auto succ = schedule.assignment.find(p.successor);
    if (pred == schedule.assignment.end() || succ == schedule.assignment.end()) continue;
    const auto pred_span = active_span(pred->second);
    const auto succ_span = active_span(succ->second);
    if (!pred_span || !succ_span) continue;
    if (succ_span->first < pred_span->second + 1) {
      std::vector<int> overlap;
      for (int t = succ_span->first; t <= pred_span->second; ++t) overlap.push_back(t);
      out.push_back({p.successor, Rule::Precedence, overlap,
                     "'" + p.successor + "' starts at " + std::to_string(succ_span->first) + " before '" +
                         p.predecessor + "' finishes at " + std::to_string(pred_span->second)});
    }
  }
  return out;
}

CostBreakdown total_cost(const Schedule& schedule, const TariffDay& tariff, const HouseholdScenario& scenario) {
  auto violations = validate_schedule(schedule, scenario);
  if (!violations.empty()) throw InfeasibleSchedule(std::move(violations));
  CostBreakdown out;
  for (const auto& a : scenario.appliances()) {
    const Activation& bits = schedule.assignment.at(a.id);
    for (int t = 0; t < kSlotsPerDay; ++t) {
      if (bits.test(static_cast<std::size_t>(t))) out.hourly[static_cast<std::size_t>(t)] += cost_of(a.power_rating, tariff.price(t));
    }
  }
  for (const Money& m : out.hourly) out.total += m;
  return out;
}

namespace {

Appliance make_appliance(std::string id, ApplianceKind kind, const char* kwh, int slots,
                         std::optional<Activation> profile = std::nullopt) {
  return Appliance{std::move(id), kind, Energy::from_kwh(kwh), slots, profile};
}

Activation slots_of(std::initializer_list<std::pair<int, int>> runs) {
  Activation bits;
  for (auto [first, last] : runs) bits |= contiguous_run(first, last - first + 1);
  return bits;
}

}  // namespace

HouseholdScenario make_table1_scenario() {
  using K = ApplianceKind;
  const Activation fan = slots_of({{8, 21}});
  const Activation lamp = slots_of({{0, 5}, {17, 23}});
  const Activation tv = slots_of({{17, 23}});
  const Activation oven = slots_of({{12, 17}});
  std::vector<Appliance> appliances{
      make_appliance("ceiling fan", K::Fixed, "0.075", 14, fan),
      make_appliance("lamp", K::Fixed, "0.1", 13, lamp),
      make_appliance("tv", K::Fixed, "0.48", 7, tv),
      make_appliance("oven", K::Fixed, "2.3", 6, oven),
      make_appliance("washing machine", K::FlexibleUninterruptible, "0.7", 8),
      make_appliance("iron", K::FlexibleUninterruptible, "1.8", 7),
      make_appliance("air conditioner", K::FlexibleInterruptible, "1.44", 10),
      make_appliance("water heater", K::FlexibleInterruptible, "4.45", 8),
  };
  Schedule baseline;
  baseline.assignment = {
      {"ceiling fan", fan},
      {"lamp", lamp},
      {"tv", tv},
      {"oven", oven},
      {"washing machine", slots_of({{7, 14}})},
      {"iron", slots_of({{15, 21}})},
      {"air conditioner", slots_of({{12, 21}})},
      {"water heater", slots_of({{16, 23}})},
  };
  return HouseholdScenario(std::move(appliances), {{"washing machine", "iron"}}, std::move(baseline));
}

TariffDay make_default_tariff(Season season) {
  std::array<Band, kSlotsPerDay> bands;
  bands.fill(Band::OffPeak);
  auto mark = [&bands](int first, int last, Band band) {
    for (int t = first; t <= last; ++t) bands[static_cast<std::size_t>(t)] = band;
  };
  Price peak;
  if (season == Season::Winter) {
    // Peak 7-11 am and 6-8 pm, mid-peak 11 am-6 pm.
    mark(7, 10, Band::Peak);
    mark(18, 19, Band::Peak);
    mark(11, 17, Band::MidPeak);
    peak = Price::from_cents("20.8");
  } else {
    // Peak 11 am-5 pm, mid-peak 7-11 am and 5-7 pm.
    mark(11, 16, Band::Peak);
    mark(7, 10, Band::MidPeak);
    mark(17, 18, Band::MidPeak);
    peak = Price::from_cents("13.4");  // placeholder
  }
  const Price mid = Price::from_cents("9.4");       // placeholder
  const Price off_peak = Price::from_cents("6.5");  // placeholder
  std::array<Price, kSlotsPerDay> prices;
  for (int t = 0; t < kSlotsPerDay; ++t) {
    const Band b = bands[static_cast<std::size_t>(t)];
    prices[static_cast<std::size_t>(t)] = b == Band::Peak ? peak : b == Band::MidPeak ? mid : off_peak;
  }
  return TariffDay(prices, bands, season);
}

}  // namespace hemsim
