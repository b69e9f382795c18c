#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsvhhg/config.hpp"
#include "bsvhhg/csv.hpp"

namespace bsv {

struct ScenarioResult {
  std::string id;
  CsvTable table;
  nlohmann::json metadata;
};

const std::vector<std::string>& scenario_ids();
bool is_scenario(const std::string& id);

/// Throws ConfigError for unknown ids or blocking validation findings.
ScenarioResult run_scenario(const std::string& id, const ScenarioConfig& config);

/// Writes <id>.csv and <id>.meta.json and merges the scenario into
/// manifest.json (replaced when the config hash differs).
void write_bundle(const ScenarioResult& result, const ScenarioConfig& config, const std::filesystem::path& out_dir,
                  double runtime_seconds);

}  // namespace bsv
