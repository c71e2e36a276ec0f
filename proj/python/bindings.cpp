#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hemsim/attack.hpp"
#include "hemsim/errors.hpp"
#include "hemsim/experiment.hpp"
#include "hemsim/report_io.hpp"
#include "hemsim/resilience.hpp"
#include "hemsim/scenario_io.hpp"
#include "hemsim/schedulers.hpp"

namespace py = pybind11;
using namespace hemsim;

namespace {

// Schedules cross the boundary as {appliance id: "0101..."} dicts.
using ScheduleDict = std::map<std::string, std::string>;

ScheduleDict to_dict(const Schedule& s) {
  ScheduleDict out;
  for (const auto& [id, bits] : s.assignment) out.emplace(id, activation_to_string(bits));
  return out;
}

Schedule from_dict(const ScheduleDict& d) {
  Schedule s;
  for (const auto& [id, text] : d) s.assignment.emplace(id, activation_from_string(text));
  return s;
}

Season parse_season(const std::string& text) {
  if (text == "summer") return Season::Summer;
  if (text == "winter") return Season::Winter;
  throw InvalidInput("season must be summer or winter, got '" + text + "'");
}

py::object fraction(const Percent& p) {
  return py::module_::import("fractions").attr("Fraction")(p.numerator(), p.denominator());
}

std::vector<AttackSpec> parse_attacks(const std::vector<std::string>& texts) {
  std::vector<AttackSpec> out;
  for (const auto& t : texts) out.push_back(parse_attack(t));
  return out;
}

OptimizerSelection make_selection(const std::string& optimizer, std::uint64_t seed, const GAParams& ga,
                                  const HSAParams& hsa, std::uint64_t oracle_limit) {
  OptimizerSelection s;
  s.kind = parse_optimizer_kind(optimizer);
  s.ga = ga;
  s.hsa = hsa;
  s.oracle_limit = oracle_limit;
  return s.with_seed(seed);
}

}  // namespace

PYBIND11_MODULE(hemsim, m) {
  m.doc() = "Appliance scheduling under time-of-use tariffs, forged-price attacks and the resilience index";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", invalid.ptr());
  py::register_exception<InfeasibleSchedule>(m, "InfeasibleSchedule", error.ptr());
  py::register_exception<EncodingMismatch>(m, "EncodingMismatch", error.ptr());
  py::register_exception<SearchSpaceTooLarge>(m, "SearchSpaceTooLarge", error.ptr());
  py::register_exception<InvalidAttack>(m, "InvalidAttack", error.ptr());
  py::register_exception<UndefinedRI>(m, "UndefinedRI", error.ptr());

  py::class_<Money>(m, "Money")
      .def(py::init([](std::int64_t units) { return Money{units}; }), py::arg("units"))
      .def_static("from_cents", [](const std::string& text) { return Money::parse_cents(text); })
      .def_readonly("units", &Money::units, "Integer units of 1/10000 cent")
      .def_property_readonly("cents", &Money::cents)
      .def("__str__", &Money::to_cents_string)
      .def("__repr__", [](const Money& m) { return "Money('" + m.to_cents_string() + "')"; })
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def("__hash__", [](const Money& m) { return std::hash<std::int64_t>{}(m.units); });

  py::class_<Appliance>(m, "Appliance")
      .def_readonly("id", &Appliance::id)
      .def_property_readonly("kind", [](const Appliance& a) { return std::string(to_string(a.kind)); })
      .def_property_readonly("power_kwh", [](const Appliance& a) { return a.power_rating.to_kwh_string(); })
      .def_readonly("operating_slots", &Appliance::operating_slots)
      .def_property_readonly("fixed_profile", [](const Appliance& a) -> std::optional<std::string> {
        if (!a.fixed_profile) return std::nullopt;
        return activation_to_string(*a.fixed_profile);
      });

  py::class_<HouseholdScenario>(m, "HouseholdScenario")
      .def_property_readonly("appliances", &HouseholdScenario::appliances)
      .def_property_readonly("precedence",
                             [](const HouseholdScenario& s) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& p : s.precedence()) out.emplace_back(p.predecessor, p.successor);
                               return out;
                             })
      .def_property_readonly("baseline", [](const HouseholdScenario& s) { return to_dict(s.baseline()); })
      .def("__eq__", [](const HouseholdScenario& a, const HouseholdScenario& b) { return a == b; });

  py::class_<TariffDay>(m, "TariffDay")
      .def_property_readonly("prices",
                             [](const TariffDay& t) {
                               std::vector<std::string> out;
                               for (const auto& p : t.prices()) out.push_back(p.to_cents_string());
                               return out;
                             })
      .def_property_readonly("bands",
                             [](const TariffDay& t) {
                               std::vector<std::string> out;
                               for (auto b : t.bands()) out.emplace_back(to_string(b));
                               return out;
                             })
      .def_property_readonly("season", [](const TariffDay& t) { return std::string(to_string(t.season())); })
      .def("__eq__", [](const TariffDay& a, const TariffDay& b) { return a == b; });

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_property_readonly("hourly", [](const CostBreakdown& c) { return std::vector<Money>(c.hourly.begin(), c.hourly.end()); })
      .def_readonly("total", &CostBreakdown::total);

  py::class_<GAParams>(m, "GAParams")
      .def(py::init<>())
      .def_readwrite("population_size", &GAParams::population_size)
      .def_readwrite("generations", &GAParams::generations)
      .def_readwrite("crossover_rate", &GAParams::crossover_rate)
      .def_readwrite("mutation_rate", &GAParams::mutation_rate)
      .def_readwrite("tournament_size", &GAParams::tournament_size)
      .def_readwrite("seed", &GAParams::seed);

  py::class_<HSAParams>(m, "HSAParams")
      .def(py::init<>())
      .def_readwrite("harmony_memory_size", &HSAParams::harmony_memory_size)
      .def_readwrite("hmcr", &HSAParams::hmcr)
      .def_readwrite("par", &HSAParams::par)
      .def_readwrite("max_improvisations", &HSAParams::max_improvisations)
      .def_readwrite("seed", &HSAParams::seed);

  py::class_<OptimizerResult>(m, "OptimizerResult")
      .def_property_readonly("schedule", [](const OptimizerResult& r) { return to_dict(r.schedule); })
      .def_readonly("cost", &OptimizerResult::cost)
      .def_readonly("best_cost_history", &OptimizerResult::best_cost_history)
      .def_readonly("evaluations", &OptimizerResult::evaluations)
      .def_readonly("seed", &OptimizerResult::seed);

  py::class_<ExperimentReport>(m, "ExperimentReport")
      .def_property_readonly("optimizer", [](const ExperimentReport& r) { return std::string(to_string(r.optimizer)); })
      .def_property_readonly("billing_mode", [](const ExperimentReport& r) { return std::string(to_string(r.billing_mode)); })
      .def_property_readonly("attacks",
                             [](const ExperimentReport& r) {
                               std::vector<std::string> out;
                               for (const auto& a : r.attack_echo) out.push_back(format_attack(a));
                               return out;
                             })
      .def_readonly("forged_tariff", &ExperimentReport::forged_tariff)
      .def_readonly("clean", &ExperimentReport::clean)
      .def_readonly("attacked", &ExperimentReport::attacked)
      .def_property_readonly("ri_total", [](const ExperimentReport& r) { return fraction(r.ri_total); })
      .def_property_readonly("ri_hourly",
                             [](const ExperimentReport& r) {
                               py::list out;
                               for (const auto& v : r.ri_hourly) out.append(v ? fraction(*v) : py::none());
                               return out;
                             })
      .def_readonly("ri_hourly_mean", &ExperimentReport::ri_hourly_mean)
      .def("record", &report_record, "The report as a YAML text record");

  m.def("table1_scenario", &make_table1_scenario, "The eight-appliance household with its default baseline");
  m.def("default_tariff", [](const std::string& season) { return make_default_tariff(parse_season(season)); },
        py::arg("season"));
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("source") = "<scenario>");
  m.def("write_scenario", &write_scenario, py::arg("scenario"));
  m.def("load_tariff", &load_tariff, py::arg("path"));
  m.def("parse_tariff", &parse_tariff, py::arg("text"), py::arg("source") = "<tariff>");
  m.def("write_tariff", &write_tariff, py::arg("tariff"));

  m.def(
      "validate_schedule",
      [](const ScheduleDict& schedule, const HouseholdScenario& scenario) {
        py::list out;
        for (const auto& v : validate_schedule(from_dict(schedule), scenario)) {
          py::dict d;
          d["appliance"] = v.appliance;
          d["rule"] = to_string(v.rule);
          d["slots"] = v.slots;
          d["message"] = v.message;
          out.append(d);
        }
        return out;
      },
      py::arg("schedule"), py::arg("scenario"), "Rule violations as dicts; empty when feasible");
  m.def(
      "total_cost",
      [](const ScheduleDict& schedule, const TariffDay& tariff, const HouseholdScenario& scenario) {
        return total_cost(from_dict(schedule), tariff, scenario);
      },
      py::arg("schedule"), py::arg("tariff"), py::arg("scenario"));

  m.def("ga_optimize", &ga_optimize, py::arg("scenario"), py::arg("tariff"), py::arg("params") = GAParams{});
  m.def("hsa_optimize", &hsa_optimize, py::arg("scenario"), py::arg("tariff"), py::arg("params") = HSAParams{});
  m.def("brute_force_optimize", &brute_force_optimize, py::arg("scenario"), py::arg("tariff"),
        py::arg("limit") = kDefaultOracleLimit);
  m.def("baseline_result", &baseline_result, py::arg("scenario"), py::arg("tariff"));
  m.def("search_space_size", [](const HouseholdScenario& s) { return static_cast<double>(search_space_size(s)); });

  m.def("apply_attack", [](const TariffDay& t, const std::string& attack) { return apply_attack(t, parse_attack(attack)); },
        py::arg("tariff"), py::arg("attack"), "Apply one attack given in compact text form, e.g. 'scale:1.5@7-10'");
  m.def("compose_attacks",
        [](const TariffDay& t, const std::vector<std::string>& attacks) { return compose_attacks(t, parse_attacks(attacks)); },
        py::arg("tariff"), py::arg("attacks"));
  m.def("normalize_attack", [](const std::string& attack) { return format_attack(parse_attack(attack)); },
        py::arg("attack"), "Parse and re-format an attack string");

  m.def("resilience_index", [](const Money& attacked, const Money& clean) { return fraction(resilience_index(attacked, clean)); },
        py::arg("c_attacked"), py::arg("c_clean"), "Exact RI as a fractions.Fraction percentage");

  m.def(
      "run_experiment",
      [](const HouseholdScenario& scenario, const TariffDay& tariff, const std::vector<std::string>& attacks,
         const std::string& optimizer, std::uint64_t seed, const std::string& billing_mode, const GAParams& ga,
         const HSAParams& hsa, std::uint64_t oracle_limit) {
        return run_experiment(scenario, tariff, parse_attacks(attacks), make_selection(optimizer, seed, ga, hsa, oracle_limit),
                              parse_billing_mode(billing_mode));
      },
      py::arg("scenario"), py::arg("tariff"), py::arg("attacks"), py::arg("optimizer") = "ga", py::arg("seed") = 1,
      py::arg("billing_mode") = "true_tariff", py::arg("ga") = GAParams{}, py::arg("hsa") = HSAParams{},
      py::arg("oracle_limit") = kDefaultOracleLimit);
}
