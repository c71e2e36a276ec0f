#include "hemsim/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "hemsim/errors.hpp"

namespace hemsim {

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s(buf);
  return s == "-0.0000" ? "0.0000" : s;
}

/// Shortest text that reads back to the same double.
std::string exact(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string hour_row_prefix(int t) { return std::to_string(t); }

std::string seed_text(const ExperimentReport& r) {
  return r.optimizer == OptimizerKind::GA || r.optimizer == OptimizerKind::HSA ? std::to_string(r.params_echo.seed())
                                                                                : "-";
}

}  // namespace

std::string hourly_cost_csv(const std::vector<NamedCost>& columns) {
  std::string out = "hour";
  for (const auto& c : columns) out += "," + c.name + "_cost";
  out += "\n";
  for (int t = 0; t < kSlotsPerDay; ++t) {
    out += hour_row_prefix(t);
    for (const auto& c : columns) out += "," + c.cost.hourly[static_cast<std::size_t>(t)].to_cents_string();
    out += "\n";
  }
  return out;
}

std::string optimize_summary_csv(const std::vector<OptimizeSummaryRow>& rows, Money baseline_total) {
  std::string out = "optimizer,seed,total_cost,baseline_cost,reduction_pct,evaluations\n";
  for (const auto& r : rows) {
    const bool seeded = r.optimizer == OptimizerKind::GA || r.optimizer == OptimizerKind::HSA;
    std::string reduction = "undefined";
    if (baseline_total.units > 0) {
      reduction = format_percent(Percent(100 * (baseline_total.units - r.result->cost.total.units), baseline_total.units));
    }
    out += std::string(to_string(r.optimizer)) + "," + (seeded ? std::to_string(r.seed) : "-") + "," +
           r.result->cost.total.to_cents_string() + "," + baseline_total.to_cents_string() + "," + reduction + "," +
           std::to_string(r.result->evaluations) + "\n";
  }
  return out;
}

std::string schedule_csv(const std::vector<OptimizeSummaryRow>& rows) {
  std::string out = "optimizer,seed,appliance,activation\n";
  for (const auto& r : rows) {
    const bool seeded = r.optimizer == OptimizerKind::GA || r.optimizer == OptimizerKind::HSA;
    for (const auto& [id, bits] : r.result->schedule.assignment) {
      out += std::string(to_string(r.optimizer)) + "," + (seeded ? std::to_string(r.seed) : "-") + "," + id + "," +
             activation_to_string(bits) + "\n";
    }
  }
  return out;
}

std::string attack_hourly_csv(const std::vector<const ExperimentReport*>& reports) {
  std::string out = "hour";
  for (const auto* r : reports) {
    out += std::string(",") + to_string(r->optimizer) + "_clean_cost," + to_string(r->optimizer) + "_attacked_cost";
  }
  out += "\n";
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
    out += std::to_string(t);
    for (const auto* r : reports) {
      out += "," + r->clean.cost.hourly[t].to_cents_string() + "," + r->attacked.cost.hourly[t].to_cents_string();
    }
    out += "\n";
  }
  return out;
}

std::string attack_ri_csv(const std::vector<const ExperimentReport*>& reports) {
  std::string out = "hour";
  for (const auto* r : reports) out += std::string(",") + to_string(r->optimizer) + "_ri";
  out += "\n";
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
    out += std::to_string(t);
    for (const auto* r : reports) out += "," + (r->ri_hourly[t] ? format_percent(*r->ri_hourly[t]) : "undefined");
    out += "\n";
  }
  return out;
}

std::string attack_summary_csv(const std::vector<const ExperimentReport*>& reports) {
  std::string out = "optimizer,seed,billing_mode,c_o,c_a,ri_total,ri_hourly_mean\n";
  for (const auto* r : reports) {
    out += std::string(to_string(r->optimizer)) + "," + seed_text(*r) + "," + to_string(r->billing_mode) + "," +
           r->clean.cost.total.to_cents_string() + "," + r->attacked.cost.total.to_cents_string() + "," +
           format_percent(r->ri_total) + "," + (r->ri_hourly_mean ? fixed4(*r->ri_hourly_mean) : "undefined") + "\n";
  }
  return out;
}

std::string sweep_summary_csv(const std::vector<std::pair<OptimizerKind, SweepSummary>>& rows) {
  std::string out =
      "optimizer,runs,ri_total_mean,ri_total_min,ri_total_max,c_o_mean,c_o_min,c_o_max,c_a_mean,c_a_min,c_a_max\n";
  for (const auto& [kind, s] : rows) {
    out += std::string(to_string(kind)) + "," + std::to_string(s.runs);
    for (const Stats* st : {&s.ri_total, &s.clean_cost_cents, &s.attacked_cost_cents}) {
      out += "," + fixed4(st->mean) + "," + fixed4(st->min) + "," + fixed4(st->max);
    }
    out += "\n";
  }
  return out;
}

std::string forged_tariff_csv(const TariffDay& true_tariff, const TariffDay& forged) {
  std::string out = "hour,band,true_price,forged_price\n";
  for (int t = 0; t < kSlotsPerDay; ++t) {
    out += std::to_string(t) + "," + to_string(true_tariff.bands()[static_cast<std::size_t>(t)]) + "," +
           true_tariff.price(t).to_cents_string() + "," + forged.price(t).to_cents_string() + "\n";
  }
  return out;
}

namespace {

void emit_result(std::ostringstream& os, const char* name, const OptimizerResult& r) {
  os << name << ":\n";
  os << "  total_cost: " << r.cost.total.to_cents_string() << "\n";
  os << "  evaluations: " << r.evaluations << "\n";
  os << "  final_best_cost: " << (r.best_cost_history.empty() ? "null" : r.best_cost_history.back().to_cents_string())
     << "\n";
  os << "  hourly_cost: [";
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) os << (t ? ", " : "") << r.cost.hourly[t].to_cents_string();
  os << "]\n  schedule:\n";
  for (const auto& [id, bits] : r.schedule.assignment) os << "    \"" << id << "\": \"" << activation_to_string(bits) << "\"\n";
}

}  // namespace

std::string report_record(const ExperimentReport& report) {
  std::ostringstream os;
  os << "optimizer: " << to_string(report.optimizer) << "\n";
  os << "billing_mode: " << to_string(report.billing_mode) << "\n";
  os << "params:\n";
  switch (report.optimizer) {
    case OptimizerKind::GA: {
      const auto& p = report.params_echo.ga;
      os << "  population_size: " << p.population_size << "\n  generations: " << p.generations
         << "\n  crossover_rate: " << exact(p.crossover_rate) << "\n  mutation_rate: " << exact(p.mutation_rate)
         << "\n  tournament_size: " << p.tournament_size << "\n  elitism: 1\n  seed: " << p.seed << "\n";
      break;
    }
    case OptimizerKind::HSA: {
      const auto& p = report.params_echo.hsa;
      os << "  harmony_memory_size: " << p.harmony_memory_size << "\n  hmcr: " << exact(p.hmcr)
         << "\n  par: " << exact(p.par) << "\n  max_improvisations: " << p.max_improvisations
         << "\n  seed: " << p.seed << "\n";
      break;
    }
    case OptimizerKind::Oracle: os << "  oracle_limit: " << report.params_echo.oracle_limit << "\n"; break;
    case OptimizerKind::Baseline: os << "  {}\n"; break;
  }
  os << "attacks: [";
  for (std::size_t i = 0; i < report.attack_echo.size(); ++i) {
    os << (i ? ", " : "") << "\"" << format_attack(report.attack_echo[i]) << "\"";
  }
  os << "]\n";
  os << "forged_prices: [";
  for (int t = 0; t < kSlotsPerDay; ++t) os << (t ? ", " : "") << report.forged_tariff.price(t).to_cents_string();
  os << "]\n";
  emit_result(os, "clean", report.clean);
  emit_result(os, "attacked", report.attacked);
  os << "ri_total: " << format_percent(report.ri_total) << "\n";
  os << "ri_hourly: [";
  for (std::size_t t = 0; t < kSlotsPerDay; ++t) {
    os << (t ? ", " : "") << (report.ri_hourly[t] ? format_percent(*report.ri_hourly[t]) : "undefined");
  }
  os << "]\n";
  os << "ri_hourly_mean: " << (report.ri_hourly_mean ? fixed4(*report.ri_hourly_mean) : "undefined") << "\n";
  return os.str();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidInput("CSV has no column '" + name + "'");
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t begin = 0;
    while (true) {
      const auto pos = line.find(',', begin);
      cells.push_back(line.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin));
      if (pos == std::string::npos) break;
      begin = pos + 1;
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size()) throw InvalidInput("CSV row width differs from header");
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace hemsim
