#include "hemsim/experiment_config.hpp"

#include "hemsim/scenario_io.hpp"
#include "yaml_util.hpp"

namespace hemsim {

using detail::YamlContext;

OptimizerSelection ExperimentConfig::selection(OptimizerKind kind) const {
  return OptimizerSelection{kind, ga, hsa, oracle_limit};
}

namespace {

std::uint64_t parse_u64(const YamlContext& ctx, const YAML::Node& node, const std::string& what) {
  const std::string text = ctx.scalar(node, what);
  return ctx.guarded(node, [&] {
    if (text.empty() || text.size() > 19 || text.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidInput(what + " must be a non-negative integer, got '" + text + "'");
    }
    return std::stoull(text);
  });
}

int parse_positive_int(const YamlContext& ctx, const YAML::Node& node, const std::string& what) {
  const auto v = parse_u64(ctx, node, what);
  if (v == 0 || v > 100'000'000ULL) ctx.fail(node, what + " must be a positive integer");
  return static_cast<int>(v);
}

double parse_probability(const YamlContext& ctx, const YAML::Node& node, const std::string& what) {
  const std::string text = ctx.scalar(node, what);
  return ctx.guarded(node, [&] {
    const double v = static_cast<double>(parse_scaled_decimal(text, 12)) / 1e12;
    if (v < 0.0 || v > 1.0) throw InvalidInput(what + " must be in [0, 1]");
    return v;
  });
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text, const std::filesystem::path& base_dir,
                                         const std::string& source) {
  const YamlContext ctx(source);
  const YAML::Node root = ctx.load(text);
  ctx.require_keys(root, {"scenario", "tariffs", "optimizers", "ga", "hsa", "oracle_limit", "attacks",
                          "billing_mode", "seeds", "out_dir"});
  ExperimentConfig cfg;
  cfg.scenario_path = resolve(base_dir, ctx.scalar(ctx.field(root, "scenario"), "scenario"));

  const YAML::Node tariffs = ctx.field(root, "tariffs");
  if (!tariffs.IsSequence() || tariffs.size() == 0) ctx.fail(tariffs, "tariffs must be a non-empty list of files");
  for (const auto& t : tariffs) cfg.tariff_paths.push_back(resolve(base_dir, ctx.scalar(t, "tariff path")));

  if (const YAML::Node opts = root["optimizers"]) {
    if (!opts.IsSequence() || opts.size() == 0) ctx.fail(opts, "optimizers must be a non-empty list");
    cfg.optimizers.clear();
    for (const auto& o : opts) {
      const std::string name = ctx.scalar(o, "optimizer");
      const OptimizerKind kind = ctx.guarded(o, [&] { return parse_optimizer_kind(name); });
      if (std::find(cfg.optimizers.begin(), cfg.optimizers.end(), kind) != cfg.optimizers.end()) {
        ctx.fail(o, "optimizer '" + name + "' listed twice");
      }
      cfg.optimizers.push_back(kind);
    }
  }

  if (const YAML::Node ga = root["ga"]) {
    ctx.require_keys(ga, {"population_size", "generations", "crossover_rate", "mutation_rate", "tournament_size"});
    if (ga["population_size"]) cfg.ga.population_size = parse_positive_int(ctx, ga["population_size"], "population_size");
    if (ga["generations"]) cfg.ga.generations = parse_positive_int(ctx, ga["generations"], "generations");
    if (ga["crossover_rate"]) cfg.ga.crossover_rate = parse_probability(ctx, ga["crossover_rate"], "crossover_rate");
    if (ga["mutation_rate"]) cfg.ga.mutation_rate = parse_probability(ctx, ga["mutation_rate"], "mutation_rate");
    if (ga["tournament_size"]) cfg.ga.tournament_size = parse_positive_int(ctx, ga["tournament_size"], "tournament_size");
    ctx.guarded(ga, [&] { cfg.ga.validate(); });
  }
  if (const YAML::Node hsa = root["hsa"]) {
    ctx.require_keys(hsa, {"harmony_memory_size", "hmcr", "par", "max_improvisations"});
    if (hsa["harmony_memory_size"]) {
      cfg.hsa.harmony_memory_size = parse_positive_int(ctx, hsa["harmony_memory_size"], "harmony_memory_size");
    }
    if (hsa["hmcr"]) cfg.hsa.hmcr = parse_probability(ctx, hsa["hmcr"], "hmcr");
    if (hsa["par"]) cfg.hsa.par = parse_probability(ctx, hsa["par"], "par");
    if (hsa["max_improvisations"]) {
      cfg.hsa.max_improvisations = parse_positive_int(ctx, hsa["max_improvisations"], "max_improvisations");
    }
    ctx.guarded(hsa, [&] { cfg.hsa.validate(); });
  }
  if (const YAML::Node limit = root["oracle_limit"]) cfg.oracle_limit = parse_u64(ctx, limit, "oracle_limit");

  if (const YAML::Node attacks = root["attacks"]) {
    if (!attacks.IsSequence()) ctx.fail(attacks, "attacks must be a list of attack strings");
    for (const auto& a : attacks) {
      const std::string spec = ctx.scalar(a, "attack");
      cfg.attacks.push_back(ctx.guarded(a, [&] { return parse_attack(spec); }));
    }
  }
  if (const YAML::Node mode = root["billing_mode"]) {
    const std::string text = ctx.scalar(mode, "billing_mode");
    cfg.billing_mode = ctx.guarded(mode, [&] { return parse_billing_mode(text); });
  }
  if (const YAML::Node seeds = root["seeds"]) {
    if (!seeds.IsSequence() || seeds.size() == 0) ctx.fail(seeds, "seeds must be a non-empty list");
    cfg.seeds.clear();
    for (const auto& s : seeds) cfg.seeds.push_back(parse_u64(ctx, s, "seed"));
  }
  if (const YAML::Node out = root["out_dir"]) cfg.out_dir = resolve(base_dir, ctx.scalar(out, "out_dir"));
  else cfg.out_dir = base_dir / "out";
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_text_file(path), path.parent_path(), path.string());
}

}  // namespace hemsim
