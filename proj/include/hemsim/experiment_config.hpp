#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hemsim/attack.hpp"
#include "hemsim/experiment.hpp"
#include "hemsim/schedulers.hpp"

namespace hemsim {

/// One experiment file. Relative paths are resolved against the directory
/// holding the config file.
struct ExperimentConfig {
  std::filesystem::path scenario_path;
  std::vector<std::filesystem::path> tariff_paths;
  std::vector<OptimizerKind> optimizers{OptimizerKind::Baseline, OptimizerKind::GA, OptimizerKind::HSA};
  GAParams ga;
  HSAParams hsa;
  std::uint64_t oracle_limit = kDefaultOracleLimit;
  std::vector<AttackSpec> attacks;
  BillingMode billing_mode = BillingMode::TrueTariff;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path out_dir{"out"};

  OptimizerSelection selection(OptimizerKind kind) const;
};

/// Unknown keys are errors. Does not open the referenced files.
ExperimentConfig parse_experiment_config(const std::string& text, const std::filesystem::path& base_dir,
                                         const std::string& source = "<config>");
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace hemsim
