#include "hemsim/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "yaml_util.hpp"

namespace hemsim {

using detail::YamlContext;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

ApplianceKind parse_kind(const YamlContext& ctx, const YAML::Node& node) {
  const std::string text = ctx.scalar(node, "kind");
  if (text == "fixed") return ApplianceKind::Fixed;
  if (text == "uninterruptible") return ApplianceKind::FlexibleUninterruptible;
  if (text == "interruptible") return ApplianceKind::FlexibleInterruptible;
  ctx.fail(node, "kind must be fixed, uninterruptible or interruptible, got '" + text + "'");
}

int parse_int(const YamlContext& ctx, const YAML::Node& node, const std::string& what) {
  const std::string text = ctx.scalar(node, what);
  return ctx.guarded(node, [&] {
    const auto v = parse_scaled_decimal(text, 0);
    if (v > 1000000) throw InvalidInput(what + " out of range");
    return static_cast<int>(v);
  });
}

Activation parse_activation(const YamlContext& ctx, const YAML::Node& node) {
  const std::string text = ctx.scalar(node, "activation vector");
  return ctx.guarded(node, [&] { return activation_from_string(text); });
}

}  // namespace

HouseholdScenario parse_scenario(const std::string& text, const std::string& source) {
  const YamlContext ctx(source);
  const YAML::Node root = ctx.load(text);
  ctx.require_keys(root, {"appliances", "precedence", "baseline"});

  std::vector<Appliance> appliances;
  const YAML::Node list = ctx.field(root, "appliances");
  if (!list.IsSequence()) ctx.fail(list, "appliances must be a list");
  for (const auto& item : list) {
    ctx.require_keys(item, {"id", "kind", "power_kwh", "operating_slots", "fixed_profile"});
    Appliance a;
    a.id = ctx.scalar(ctx.field(item, "id"), "id");
    a.kind = parse_kind(ctx, ctx.field(item, "kind"));
    const YAML::Node power = ctx.field(item, "power_kwh");
    a.power_rating = ctx.guarded(power, [&] { return Energy::from_kwh(ctx.scalar(power, "power_kwh")); });
    if (a.power_rating.wh <= 0) ctx.fail(power, "power_kwh must be > 0");
    const YAML::Node slots = ctx.field(item, "operating_slots");
    a.operating_slots = parse_int(ctx, slots, "operating_slots");
    if (a.operating_slots < 1 || a.operating_slots > kSlotsPerDay) ctx.fail(slots, "operating_slots must be in [1, 24]");
    if (item["fixed_profile"]) a.fixed_profile = parse_activation(ctx, item["fixed_profile"]);
    ctx.guarded(item, [&] { a.validate(); });
    for (const auto& other : appliances) {
      if (other.id == a.id) ctx.fail(item, "duplicate appliance id '" + a.id + "'");
    }
    appliances.push_back(std::move(a));
  }

  std::vector<PrecedencePair> precedence;
  if (const YAML::Node pairs = root["precedence"]) {
    if (!pairs.IsSequence()) ctx.fail(pairs, "precedence must be a list of [predecessor, successor] pairs");
    for (const auto& pair : pairs) {
      if (!pair.IsSequence() || pair.size() != 2) ctx.fail(pair, "precedence entry must be [predecessor, successor]");
      PrecedencePair p{ctx.scalar(pair[0], "predecessor"), ctx.scalar(pair[1], "successor")};
      for (const auto* id : {&p.predecessor, &p.successor}) {
        auto it = std::find_if(appliances.begin(), appliances.end(), [&](const Appliance& a) { return a.id == *id; });
        if (it == appliances.end()) ctx.fail(pair, "precedence refers to unknown appliance '" + *id + "'");
        if (it->kind != ApplianceKind::FlexibleUninterruptible) {
          ctx.fail(pair, "precedence appliance '" + *id + "' must be uninterruptible");
        }
      }
      precedence.push_back(std::move(p));
    }
  }

  Schedule baseline;
  const YAML::Node base = ctx.field(root, "baseline");
  if (!base.IsMap()) ctx.fail(base, "baseline must map appliance ids to activation vectors");
  for (const auto& kv : base) {
    const std::string id = kv.first.as<std::string>();
    auto it = std::find_if(appliances.begin(), appliances.end(), [&](const Appliance& a) { return a.id == id; });
    if (it == appliances.end()) ctx.fail(kv.first, "baseline names unknown appliance '" + id + "'");
    baseline.assignment[id] = parse_activation(ctx, kv.second);
  }
  for (const auto& a : appliances) {
    if (a.kind == ApplianceKind::Fixed) baseline.assignment.try_emplace(a.id, *a.fixed_profile);
  }

  try {
    return HouseholdScenario(std::move(appliances), std::move(precedence), std::move(baseline));
  } catch (const InfeasibleSchedule&) {
    throw;
  } catch (const InvalidInput& e) {
    ctx.fail(root, e.what());
  }
}

HouseholdScenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.string());
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string write_scenario(const HouseholdScenario& scenario) {
  std::string out = "appliances:\n";
  for (const auto& a : scenario.appliances()) {
    out += "  - id: " + quoted(a.id) + "\n";
    out += std::string("    kind: ") + to_string(a.kind) + "\n";
    out += "    power_kwh: " + a.power_rating.to_kwh_string() + "\n";
    out += "    operating_slots: " + std::to_string(a.operating_slots) + "\n";
    if (a.fixed_profile) out += "    fixed_profile: \"" + activation_to_string(*a.fixed_profile) + "\"\n";
  }
  out += "precedence:\n";
  for (const auto& p : scenario.precedence()) out += "  - [" + quoted(p.predecessor) + ", " + quoted(p.successor) + "]\n";
  if (scenario.precedence().empty()) out.replace(out.size() - 1, 1, " []\n");
  out += "baseline:\n";
  for (const auto& [id, bits] : scenario.baseline().assignment) {
    out += "  " + quoted(id) + ": \"" + activation_to_string(bits) + "\"\n";
  }
  return out;
}

TariffDay parse_tariff(const std::string& text, const std::string& source) {
  const YamlContext ctx(source);
  const YAML::Node root = ctx.load(text);
  ctx.require_keys(root, {"season", "prices", "bands"});

  const YAML::Node season_node = ctx.field(root, "season");
  const std::string season_text = ctx.scalar(season_node, "season");
  Season season;
  if (season_text == "summer") {
    season = Season::Summer;
  } else if (season_text == "winter") {
    season = Season::Winter;
  } else {
    ctx.fail(season_node, "season must be summer or winter, got '" + season_text + "'");
  }

  const YAML::Node price_list = ctx.field(root, "prices");
  if (!price_list.IsSequence() || price_list.size() != kSlotsPerDay) {
    ctx.fail(price_list, "prices must be a list of exactly 24 values");
  }
  std::array<Price, kSlotsPerDay> prices;
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
    const YAML::Node p = price_list[t];
    prices[t] = ctx.guarded(p, [&] { return Price::from_cents(ctx.scalar(p, "price")); });
    if (prices[t].tenths <= 0) ctx.fail(p, "price at hour " + std::to_string(t) + " must be > 0");
  }

  const YAML::Node band_list = ctx.field(root, "bands");
  if (!band_list.IsSequence() || band_list.size() != kSlotsPerDay) {
    ctx.fail(band_list, "bands must be a list of exactly 24 labels");
  }
  std::array<Band, kSlotsPerDay> bands;
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
    const YAML::Node b = band_list[t];
    const std::string label = ctx.scalar(b, "band");
    if (label == "off_peak") {
      bands[t] = Band::OffPeak;
    } else if (label == "mid_peak") {
      bands[t] = Band::MidPeak;
    } else if (label == "peak") {
      bands[t] = Band::Peak;
    } else {
      ctx.fail(b, "band must be off_peak, mid_peak or peak, got '" + label + "'");
    }
  }
  return TariffDay(prices, bands, season);
}

TariffDay load_tariff(const std::filesystem::path& path) { return parse_tariff(read_text_file(path), path.string()); }

std::string write_tariff(const TariffDay& tariff) {
  std::string out = std::string("season: ") + to_string(tariff.season()) + "\nprices: [";
  for (int t = 0; t < kSlotsPerDay; ++t) out += (t ? ", " : "") + tariff.price(t).to_cents_string();
  out += "]\nbands: [";
  for (int t = 0; t < kSlotsPerDay; ++t) out += std::string(t ? ", " : "") + to_string(tariff.bands()[static_cast<std::size_t>(t)]);
  return out + "]\n";
}

}  // namespace hemsim
