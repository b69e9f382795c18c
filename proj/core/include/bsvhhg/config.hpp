#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bsvhhg/field.hpp"
#include "bsvhhg/ionization.hpp"
#include "bsvhhg/propagation.hpp"

namespace bsv {

struct GridSpec {
  double min = 1e13;
  double max = 5e14;
  int points = 24;
  bool log_spaced = true;
  std::vector<double> values;  // explicit grid; overrides min/max/points when non-empty

  std::vector<double> resolve() const;
};

struct ScenarioConfig {
  std::string species = "argon";
  std::filesystem::path species_file;  // empty: built-in presets
  field::PulseParameters pulse;

  double mean_intensity = 1.5e14;  // W/cm^2
  double quantization_volume = 1e-14;  // cm^3
  int nodes = field::kDefaultNodes;  // spectra and propagation ensembles
  field::QuadratureRule yield_rule = field::QuadratureRule::Trapezoid;
  int yield_nodes = ionization::kYieldNodes;
  GridSpec intensity_grid;

  int harmonic = 15;
  double spreading_regularizer = 0.1;
  double excursion_cycles = 1.0;
  double max_order = 100.0;
  double cutoff_drop_db = 20.0;
  double min_node_weight = 1e-16;

  double ionization_regularizer = ionization::kDefaultRegularizer;
  bool plasma_includes_mpi = true;

  propagation::MediumConfig medium;
  bool paper_literal_eq4 = false;
  double scan_max_absorption_lengths = 10.0;
  int scan_points = 201;
  double fig3b_absorption_lengths = 10.0;
  double fig4c_absorption_lengths = 2.0;
  GridSpec density_grid{1e15, 1e19, 17, true, {}};
  double fig4d_bsv_absorption_lengths = 2.0;
  double fig4d_coherent_absorption_lengths = 2.5;

  double squeezing = 2.0;  // loss-channel scenarios
  int absorption_points = 51;
  int wigner_points = 101;
  double wigner_half_width = 6.0;  // in units of the widest standard deviation
  double saturated_fraction = 0.4;
  double photons_ir = 1e13;
  int photons_per_ionization = 11;

  double ce_ref = 5e-6;
  double spot_area_ref = 5e-4;      // cm^2
  double spot_area_target = 2.5e-7;  // cm^2
  double coherent_over_bsv_ratio = 100.0;

  unsigned threads = 1;  // execution only; not part of the hash
};

/// Parses YAML text. Syntax errors, unknown keys and type mismatches throw
/// ConfigError naming the field and line.
ScenarioConfig parse_config(const std::string& yaml_text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

struct Finding {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string field;
  std::string message;
};

std::vector<Finding> validate_config(const ScenarioConfig& config);
bool has_errors(const std::vector<Finding>& findings);

/// Canonical JSON form of every result-affecting field.
nlohmann::json to_json(const ScenarioConfig& config);
/// SHA-256 (hex) of the compact canonical JSON.
std::string config_hash(const ScenarioConfig& config);

ionization::AtomSpecies resolve_species(const ScenarioConfig& config);

}  // namespace bsv
