#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "hemsim/errors.hpp"
#include "hemsim/experiment_config.hpp"
#include "hemsim/report_io.hpp"
#include "hemsim/scenario_io.hpp"

namespace hemsim::cli {

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::string config;
  std::string scenario;
  std::vector<std::string> tariffs;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string billing_mode;
  std::optional<std::uint64_t> oracle_limit;
  std::string optimizers;
  std::vector<std::string> attacks;
  std::optional<int> ga_population, ga_generations, ga_tournament;
  std::optional<double> ga_crossover, ga_mutation;
  std::optional<int> hsa_memory, hsa_improvisations;
  std::optional<double> hsa_hmcr, hsa_par;
};

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = load_experiment_config(o.config);
  } else {
    if (o.scenario.empty() || o.tariffs.empty()) {
      throw InvalidInput("either --config or both --scenario and --tariff are required");
    }
    cfg.out_dir = "out";
  }
  if (!o.scenario.empty()) cfg.scenario_path = o.scenario;
  if (!o.tariffs.empty()) cfg.tariff_paths.assign(o.tariffs.begin(), o.tariffs.end());
  if (o.seed) cfg.seeds = {*o.seed};
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (!o.billing_mode.empty()) cfg.billing_mode = parse_billing_mode(o.billing_mode);
  if (o.oracle_limit) cfg.oracle_limit = *o.oracle_limit;
  if (!o.optimizers.empty()) {
    cfg.optimizers.clear();
    std::size_t begin = 0;
    while (begin <= o.optimizers.size()) {
      const auto pos = o.optimizers.find(',', begin);
      const auto name = o.optimizers.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin);
      const auto kind = parse_optimizer_kind(name);
      if (std::find(cfg.optimizers.begin(), cfg.optimizers.end(), kind) == cfg.optimizers.end()) {
        cfg.optimizers.push_back(kind);
      }
      if (pos == std::string::npos) break;
      begin = pos + 1;
    }
  }
  if (!o.attacks.empty()) {
    cfg.attacks.clear();
    for (const auto& a : o.attacks) cfg.attacks.push_back(parse_attack(a));
  }
  if (o.ga_population) cfg.ga.population_size = *o.ga_population;
  if (o.ga_generations) cfg.ga.generations = *o.ga_generations;
  if (o.ga_tournament) cfg.ga.tournament_size = *o.ga_tournament;
  if (o.ga_crossover) cfg.ga.crossover_rate = *o.ga_crossover;
  if (o.ga_mutation) cfg.ga.mutation_rate = *o.ga_mutation;
  if (o.hsa_memory) cfg.hsa.harmony_memory_size = *o.hsa_memory;
  if (o.hsa_improvisations) cfg.hsa.max_improvisations = *o.hsa_improvisations;
  if (o.hsa_hmcr) cfg.hsa.hmcr = *o.hsa_hmcr;
  if (o.hsa_par) cfg.hsa.par = *o.hsa_par;
  cfg.ga.validate();
  cfg.hsa.validate();
  return cfg;
}

struct Inputs {
  HouseholdScenario scenario;
  std::vector<std::pair<std::string, TariffDay>> tariffs;  // file stem, tariff
};

Inputs load_inputs(const ExperimentConfig& cfg) {
  HouseholdScenario scenario = load_scenario(cfg.scenario_path);
  std::vector<std::pair<std::string, TariffDay>> tariffs;
  for (const auto& p : cfg.tariff_paths) {
    std::string stem = p.stem().string();
    for (const auto& [existing, t] : tariffs) {
      if (existing == stem) throw InvalidInput("two tariff files share the name '" + stem + "'");
    }
    tariffs.emplace_back(std::move(stem), load_tariff(p));
  }
  return Inputs{std::move(scenario), std::move(tariffs)};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InvalidInput("cannot create output directory '" + dir.string() + "'");
}

void check_feasible(const OptimizerResult& r, const HouseholdScenario& scenario, OptimizerKind kind) {
  if (!validate_schedule(r.schedule, scenario).empty()) {
    throw std::logic_error(std::string(to_string(kind)) + " returned an infeasible schedule");
  }
  for (std::size_t i = 1; i < r.best_cost_history.size(); ++i) {
    if (r.best_cost_history[i] > r.best_cost_history[i - 1]) {
      throw std::logic_error(std::string(to_string(kind)) + " best-cost history increased");
    }
  }
}

bool is_seeded(OptimizerKind k) { return k == OptimizerKind::GA || k == OptimizerKind::HSA; }

int cmd_optimize(const ExperimentConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  prepare_out_dir(cfg.out_dir);
  for (const auto& [stem, tariff] : in.tariffs) {
    const OptimizerResult baseline = baseline_result(in.scenario, tariff);
    // Results kept alive for the summary rows.
    std::vector<std::unique_ptr<OptimizerResult>> results;
    std::vector<OptimizeSummaryRow> rows;
    std::vector<NamedCost> columns;
    for (OptimizerKind kind : cfg.optimizers) {
      const std::vector<std::uint64_t> seeds = is_seeded(kind) ? cfg.seeds : std::vector<std::uint64_t>{0};
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        results.push_back(std::make_unique<OptimizerResult>(
            run_optimizer(in.scenario, tariff, cfg.selection(kind).with_seed(seeds[i]))));
        check_feasible(*results.back(), in.scenario, kind);
        rows.push_back({kind, seeds[i], results.back().get()});
        if (i == 0) columns.push_back({to_string(kind), results.back()->cost});
      }
    }
    write_file(cfg.out_dir / ("optimize_" + stem + "_hourly.csv"), hourly_cost_csv(columns));
    write_file(cfg.out_dir / ("optimize_" + stem + "_summary.csv"), optimize_summary_csv(rows, baseline.cost.total));
    write_file(cfg.out_dir / ("optimize_" + stem + "_schedules.csv"), schedule_csv(rows));

    out << stem << " (" << to_string(tariff.season()) << "): baseline total " << baseline.cost.total.to_cents_string()
        << " cents\n";
    for (const auto& r : rows) {
      out << "  " << to_string(r.optimizer);
      if (is_seeded(r.optimizer)) out << " seed " << r.seed;
      out << ": total " << r.result->cost.total.to_cents_string() << " cents";
      if (baseline.cost.total.units > 0) {
        out << ", reduction "
            << format_percent(Percent(100 * (baseline.cost.total.units - r.result->cost.total.units),
                                      baseline.cost.total.units))
            << "%";
      }
      out << "\n";
    }
  }
  return kOk;
}

int cmd_attack(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.attacks.empty()) throw InvalidInput("attack requires attacks; use optimize");
  const Inputs in = load_inputs(cfg);
  prepare_out_dir(cfg.out_dir);
  for (const auto& [stem, tariff] : in.tariffs) {
    std::vector<SweepResult> sweeps;
    for (OptimizerKind kind : cfg.optimizers) {
      const std::vector<std::uint64_t> seeds = is_seeded(kind) ? cfg.seeds : std::vector<std::uint64_t>{0};
      sweeps.push_back(sweep_seeds(in.scenario, tariff, cfg.attacks, cfg.selection(kind), cfg.billing_mode, seeds));
      for (const auto& r : sweeps.back().reports) {
        check_feasible(r.clean, in.scenario, kind);
        check_feasible(r.attacked, in.scenario, kind);
        if (resilience_index(r.attacked.cost.total, r.clean.cost.total) != r.ri_total) {
          throw std::logic_error("stored RI disagrees with its own costs");
        }
      }
    }
    std::vector<const ExperimentReport*> first;
    std::vector<const ExperimentReport*> all;
    std::vector<std::pair<OptimizerKind, SweepSummary>> summaries;
    std::string records;
    for (const auto& s : sweeps) {
      first.push_back(&s.reports.front());
      summaries.emplace_back(s.reports.front().optimizer, s.summary);
      for (const auto& r : s.reports) {
        all.push_back(&r);
        records += "---\n" + report_record(r);
      }
    }
    const TariffDay& forged = sweeps.front().reports.front().forged_tariff;
    write_file(cfg.out_dir / ("attack_" + stem + "_forged_tariff.csv"), forged_tariff_csv(tariff, forged));
    write_file(cfg.out_dir / ("attack_" + stem + "_hourly.csv"), attack_hourly_csv(first));
    write_file(cfg.out_dir / ("attack_" + stem + "_ri.csv"), attack_ri_csv(first));
    write_file(cfg.out_dir / ("attack_" + stem + "_summary.csv"), attack_summary_csv(all));
    write_file(cfg.out_dir / ("attack_" + stem + "_sweep.csv"), sweep_summary_csv(summaries));
    write_file(cfg.out_dir / ("attack_" + stem + "_reports.yaml"), records);

    out << stem << " (" << to_string(tariff.season()) << "), billing on " << to_string(cfg.billing_mode) << "\n";
    for (const auto* r : all) {
      out << "  " << to_string(r->optimizer);
      if (is_seeded(r->optimizer)) out << " seed " << r->params_echo.seed();
      out << ": C_O " << r->clean.cost.total.to_cents_string() << ", C_A " << r->attacked.cost.total.to_cents_string()
          << ", RI " << format_percent(r->ri_total) << "%\n";
    }
  }
  return kOk;
}

int cmd_oracle(const ExperimentConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  prepare_out_dir(cfg.out_dir);
  for (const auto& [stem, tariff] : in.tariffs) {
    const OptimizerResult r = brute_force_optimize(in.scenario, tariff, cfg.oracle_limit);
    check_feasible(r, in.scenario, OptimizerKind::Oracle);
    const std::vector<OptimizeSummaryRow> rows{{OptimizerKind::Oracle, 0, &r}};
    const OptimizerResult baseline = baseline_result(in.scenario, tariff);
    write_file(cfg.out_dir / ("oracle_" + stem + "_schedule.csv"), schedule_csv(rows));
    write_file(cfg.out_dir / ("oracle_" + stem + "_summary.csv"), optimize_summary_csv(rows, baseline.cost.total));
    write_file(cfg.out_dir / ("oracle_" + stem + "_hourly.csv"), hourly_cost_csv({{"oracle", r.cost}}));
    out << stem << ": optimum " << r.cost.total.to_cents_string() << " cents over " << r.evaluations
        << " candidates\n";
  }
  return kOk;
}

int cmd_validate(const Overrides& o, std::ostream& out) {
  std::string scenario_path = o.scenario;
  std::vector<std::string> tariffs = o.tariffs;
  if (!o.config.empty()) {
    const ExperimentConfig cfg = load_experiment_config(o.config);
    if (scenario_path.empty()) scenario_path = cfg.scenario_path.string();
    if (tariffs.empty()) {
      for (const auto& p : cfg.tariff_paths) tariffs.push_back(p.string());
    }
    out << o.config << ": ok\n";
  }
  if (scenario_path.empty() && tariffs.empty()) throw InvalidInput("validate needs --config, --scenario or --tariff");
  if (!scenario_path.empty()) {
    const HouseholdScenario s = load_scenario(scenario_path);
    out << scenario_path << ": ok (" << s.appliances().size() << " appliances, " << s.precedence().size()
        << " precedence pairs)\n";
  }
  for (const auto& t : tariffs) {
    const TariffDay tariff = load_tariff(t);
    out << t << ": ok (" << to_string(tariff.season()) << ")\n";
  }
  return kOk;
}

void add_shared_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("config,--config,-c", o.config, "Experiment config file (YAML)");
  cmd.add_option("--scenario", o.scenario, "Scenario file, overrides the config");
  cmd.add_option("--tariff", o.tariffs, "Tariff file(s), override the config");
}

void add_run_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--optimizers", o.optimizers, "Comma list of ga, hsa, oracle, baseline");
  cmd.add_option("--attack", o.attacks, "Attack in compact form, e.g. lower:10.1@7-10,18-19 (repeatable)");
  cmd.add_option("--ga-population", o.ga_population);
  cmd.add_option("--ga-generations", o.ga_generations);
  cmd.add_option("--ga-crossover", o.ga_crossover);
  cmd.add_option("--ga-mutation", o.ga_mutation);
  cmd.add_option("--ga-tournament", o.ga_tournament);
  cmd.add_option("--hsa-memory", o.hsa_memory);
  cmd.add_option("--hsa-hmcr", o.hsa_hmcr);
  cmd.add_option("--hsa-par", o.hsa_par);
  cmd.add_option("--hsa-improvisations", o.hsa_improvisations);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Appliance scheduling under time-of-use tariffs and forged-price attacks"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--seed", o.seed, "Single seed, replaces the config's seed list")->group("Global");
  app.add_option("--out-dir", o.out_dir, "Output directory")->group("Global");
  app.add_option("--billing-mode", o.billing_mode, "true_tariff or forged_tariff")->group("Global");
  app.add_option("--oracle-limit", o.oracle_limit, "Maximum candidates the oracle may enumerate")->group("Global");

  auto* optimize = app.add_subcommand("optimize", "Schedule with the selected optimizers, write cost CSVs");
  auto* attack = app.add_subcommand("attack", "Clean vs attacked runs, write cost, RI and summary CSVs");
  auto* oracle = app.add_subcommand("oracle", "Exhaustive global optimum for small instances");
  auto* validate = app.add_subcommand("validate", "Parse and check scenario, tariff and config files");
  for (auto* cmd : {optimize, attack, oracle, validate}) {
    cmd->fallthrough();
    add_shared_options(*cmd, o);
  }
  for (auto* cmd : {optimize, attack}) add_run_options(*cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    const ExperimentConfig cfg = build_config(o);
    if (optimize->parsed()) return cmd_optimize(cfg, out);
    if (attack->parsed()) return cmd_attack(cfg, out);
    return cmd_oracle(cfg, out);
  } catch (const SearchSpaceTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kSearchSpaceTooLarge;
  } catch (const InfeasibleSchedule& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasibleScenario;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace hemsim::cli
