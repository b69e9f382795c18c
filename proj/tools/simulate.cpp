// simulate <scenario-id> --config <path> --out <dir> [--nodes N]
//          [--paper-literal-eq4] [--threads K]
//
// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bsvhhg/config.hpp"
#include "bsvhhg/error.hpp"
#include "bsvhhg/scenarios.hpp"
#include "bsvhhg/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string id_list() {
  std::string s;
  for (const auto& id : bsv::scenario_ids()) s += (s.empty() ? "" : ", ") + id;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run a BSV/coherent HHG scenario and write its CSV bundle"};
  app.set_version_flag("--version", bsv::kVersion);

  std::string scenario;
  std::string config_path;
  std::string out_dir;
  int nodes = 0;
  bool paper_literal = false;
  unsigned threads = 0;

  app.add_option("scenario", scenario, "Scenario id: " + id_list())->required();
  app.add_option("--config", config_path, "YAML scenario config")->required();
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--nodes", nodes, "Quadrature nodes (overrides config)");
  app.add_flag("--paper-literal-eq4", paper_literal, "Use the on-axis formula exactly as printed");
  app.add_option("--threads", threads, "Worker threads (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (!bsv::is_scenario(scenario)) {
      std::cerr << "unknown scenario '" << scenario << "'; expected one of: " << id_list() << '\n';
      return kExitConfig;
    }
    bsv::ScenarioConfig config = bsv::load_config(config_path);
    if (app.count("--nodes")) config.nodes = nodes;
    if (paper_literal) config.paper_literal_eq4 = true;
    if (app.count("--threads")) config.threads = threads;

    for (const auto& f : bsv::validate_config(config)) {
      const char* tag = f.severity == bsv::Finding::Severity::Error ? "error" : "warning";
      std::cerr << tag << ": " << f.field << ": " << f.message << '\n';
    }

    const auto start = std::chrono::steady_clock::now();
    const auto result = bsv::run_scenario(scenario, config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bsv::write_bundle(result, config, out_dir, seconds);
    std::printf("%s: %zu rows -> %s/%s.csv (%.2f s)\n", scenario.c_str(), result.table.rows.size(),
                out_dir.c_str(), scenario.c_str(), seconds);
    return 0;
  } catch (const bsv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bsv::NumericalResolutionError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const bsv::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
