#include "bsvhhg/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/sha.h>
#include <yaml-cpp/yaml.h>

#include "bsvhhg/error.hpp"

namespace bsv {

std::vector<double> GridSpec::resolve() const {
  if (!values.empty()) return values;
  std::vector<double> out;
  if (points <= 0) return out;
  if (points == 1) return {min};
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    out.push_back(log_spaced ? min * std::pow(max / min, f) : min + (max - min) * f);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

namespace {

std::string location(const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.is_null()) return {};
  return fmt::format(" (line {}, column {})", mark.line + 1, mark.column + 1);
}

// Reads one mapping, remembering which keys were consumed so leftovers can be
// reported as unknown fields.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ && !node_.IsMap()) throw ConfigError(fmt::format("'{}' must be a mapping{}", path_, location(node_)));
  }

  template <typename T>
  void read(const char* key, T& target) {
    used_.insert(key);
    if (!node_) return;
    const YAML::Node value = node_[key];
    if (!value) return;
    try {
      target = value.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(fmt::format("field '{}' has the wrong type{}", name(key), location(value)));
    }
  }

  void read(const char* key, GridSpec& grid) {
    used_.insert(key);
    if (!node_ || !node_[key]) return;
    Section g(node_[key], name(key));
    g.read("min", grid.min);
    g.read("max", grid.max);
    g.read("points", grid.points);
    g.read("log_spaced", grid.log_spaced);
    g.read("values", grid.values);
    g.finish();
  }

  Section child(const char* key) {
    used_.insert(key);
    return Section(node_ ? node_[key] : YAML::Node(), name(key));
  }

  void finish() const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.contains(key)) {
        throw ConfigError(fmt::format("unknown field '{}'{}", name(key.c_str()), location(kv.first)));
      }
    }
  }

 private:
  std::string name(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

}  // namespace

ScenarioConfig parse_config(const std::string& yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("syntax error at line {}, column {}: {}", e.mark.line + 1, e.mark.column + 1, e.msg));
  }
  ScenarioConfig c;
  if (root.IsNull()) return c;
  Section top(root, "");

  top.read("species", c.species);
  std::string species_file;
  top.read("species_file", species_file);
  if (!species_file.empty()) {
    std::filesystem::path p(species_file);
    c.species_file = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
  }

  auto pulse = top.child("pulse");
  pulse.read("wavelength_nm", c.pulse.wavelength_nm);
  pulse.read("duration_fs", c.pulse.duration_fs);
  pulse.read("carrier_phase", c.pulse.carrier_phase);
  pulse.read("samples_per_cycle", c.pulse.samples_per_cycle);
  pulse.finish();

  auto fld = top.child("field");
  fld.read("mean_intensity_w_cm2", c.mean_intensity);
  fld.read("quantization_volume_cm3", c.quantization_volume);
  fld.read("nodes", c.nodes);
  std::string rule;
  fld.read("yield_quadrature", rule);
  if (rule == "gauss_hermite") {
    c.yield_rule = field::QuadratureRule::GaussHermite;
  } else if (!rule.empty() && rule != "trapezoid") {
    throw ConfigError(fmt::format("field 'field.yield_quadrature' must be 'trapezoid' or 'gauss_hermite'{}",
                                  location(root["field"]["yield_quadrature"])));
  }
  fld.read("yield_nodes", c.yield_nodes);
  fld.read("intensity_grid", c.intensity_grid);
  fld.finish();

  auto hhg = top.child("hhg");
  hhg.read("harmonic", c.harmonic);
  hhg.read("spreading_regularizer", c.spreading_regularizer);
  hhg.read("excursion_cycles", c.excursion_cycles);
  hhg.read("max_order", c.max_order);
  hhg.read("cutoff_drop_db", c.cutoff_drop_db);
  hhg.read("min_node_weight", c.min_node_weight);
  hhg.finish();

  auto ion = top.child("ionization");
  ion.read("regularizer", c.ionization_regularizer);
  ion.read("plasma_includes_mpi", c.plasma_includes_mpi);
  ion.finish();

  auto med = top.child("medium");
  med.read("density_cm3", c.medium.density);
  med.read("length_cm", c.medium.length);
  med.read("absorption_cross_section_cm2", c.medium.absorption_cross_section);
  med.read("dispersion_mismatch_rad_cm", c.medium.dispersion_mismatch);
  med.read("spot_area_cm2", c.medium.spot_area);
  med.read("confocal_parameter_cm", c.medium.confocal_parameter);
  med.finish();

  auto prop = top.child("propagation");
  prop.read("paper_literal_eq4", c.paper_literal_eq4);
  prop.read("scan_max_absorption_lengths", c.scan_max_absorption_lengths);
  prop.read("scan_points", c.scan_points);
  prop.read("fig3b_absorption_lengths", c.fig3b_absorption_lengths);
  prop.read("fig4c_absorption_lengths", c.fig4c_absorption_lengths);
  prop.read("density_grid", c.density_grid);
  prop.read("fig4d_bsv_absorption_lengths", c.fig4d_bsv_absorption_lengths);
  prop.read("fig4d_coherent_absorption_lengths", c.fig4d_coherent_absorption_lengths);
  prop.finish();

  auto dec = top.child("decoherence");
  dec.read("squeezing", c.squeezing);
  dec.read("absorption_points", c.absorption_points);
  dec.read("wigner_points", c.wigner_points);
  dec.read("wigner_half_width", c.wigner_half_width);
  dec.read("saturated_fraction", c.saturated_fraction);
  dec.read("photons_ir", c.photons_ir);
  dec.read("photons_per_ionization", c.photons_per_ionization);
  dec.finish();

  auto bud = top.child("budget");
  bud.read("ce_ref", c.ce_ref);
  bud.read("spot_area_ref_cm2", c.spot_area_ref);
  bud.read("spot_area_target_cm2", c.spot_area_target);
  bud.read("coherent_over_bsv_ratio", c.coherent_over_bsv_ratio);
  bud.finish();

  auto run = top.child("run");
  run.read("threads", c.threads);
  run.finish();

  top.finish();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ionization::AtomSpecies resolve_species(const ScenarioConfig& config) {
  if (!config.species_file.empty()) return ionization::load_species(config.species_file, config.species);
  if (config.species == "argon") return ionization::AtomSpecies::argon();
  throw ConfigError("unknown species preset '" + config.species + "' (no species_file given)");
}

namespace {

void check_grid(const GridSpec& g, const std::string& name, std::vector<Finding>& out) {
  using S = Finding::Severity;
  const auto v = g.resolve();
  if (v.empty()) {
    out.push_back({S::Error, name, "grid is empty"});
    return;
  }
  if (g.values.empty() && g.log_spaced && !(g.min > 0.0)) {
    out.push_back({S::Error, name + ".min", "log-spaced grid needs a positive minimum"});
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      out.push_back({S::Error, name, "grid must be strictly increasing"});
      return;
    }
  }
  if (!(v.front() > 0.0)) out.push_back({S::Error, name, "grid values must be positive"});
}

}  // namespace

std::vector<Finding> validate_config(const ScenarioConfig& c) {
  using S = Finding::Severity;
  std::vector<Finding> out;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back({S::Error, name, "must be positive"});
  };

  positive(c.pulse.wavelength_nm, "pulse.wavelength_nm");
  positive(c.pulse.duration_fs, "pulse.duration_fs");
  if (c.pulse.samples_per_cycle < 40) out.push_back({S::Error, "pulse.samples_per_cycle", "must be >= 40"});
  positive(c.mean_intensity, "field.mean_intensity_w_cm2");
  positive(c.quantization_volume, "field.quantization_volume_cm3");
  if (c.nodes < field::kMinBsvNodes) {
    out.push_back({S::Error, "field.nodes", fmt::format("must be >= {}", field::kMinBsvNodes)});
  }
  const int min_yield_nodes = c.yield_rule == field::QuadratureRule::GaussHermite ? field::kMinBsvNodes : 3;
  if (c.yield_nodes < min_yield_nodes) {
    out.push_back({S::Error, "field.yield_nodes", fmt::format("must be >= {}", min_yield_nodes)});
  }
  check_grid(c.intensity_grid, "field.intensity_grid", out);
  if (c.mean_intensity > 5e14 || (!c.intensity_grid.resolve().empty() && c.intensity_grid.resolve().back() > 5e14)) {
    out.push_back({S::Warning, "field", "intensities above 5e14 W/cm^2: MPI treatment is unreliable there"});
  }

  if (c.harmonic < 1 || c.harmonic % 2 == 0) out.push_back({S::Error, "hhg.harmonic", "must be a positive odd order"});
  positive(c.spreading_regularizer, "hhg.spreading_regularizer");
  positive(c.excursion_cycles, "hhg.excursion_cycles");
  if (!(c.max_order > c.harmonic + 1)) out.push_back({S::Error, "hhg.max_order", "must exceed harmonic + 1"});
  positive(c.cutoff_drop_db, "hhg.cutoff_drop_db");
  if (!(c.min_node_weight >= 0.0)) out.push_back({S::Error, "hhg.min_node_weight", "must be >= 0"});
  positive(c.ionization_regularizer, "ionization.regularizer");

  try {
    for (const auto& w : c.medium.validate()) out.push_back({S::Warning, "medium", w});
  } catch (const DomainError& e) {
    out.push_back({S::Error, "medium", e.what()});
  }
  positive(c.scan_max_absorption_lengths, "propagation.scan_max_absorption_lengths");
  if (c.scan_points < 2) out.push_back({S::Error, "propagation.scan_points", "must be >= 2"});
  positive(c.fig3b_absorption_lengths, "propagation.fig3b_absorption_lengths");
  positive(c.fig4c_absorption_lengths, "propagation.fig4c_absorption_lengths");
  check_grid(c.density_grid, "propagation.density_grid", out);
  positive(c.fig4d_bsv_absorption_lengths, "propagation.fig4d_bsv_absorption_lengths");
  positive(c.fig4d_coherent_absorption_lengths, "propagation.fig4d_coherent_absorption_lengths");

  if (!(c.squeezing >= 0.0)) out.push_back({S::Error, "decoherence.squeezing", "must be >= 0"});
  if (c.absorption_points < 2) out.push_back({S::Error, "decoherence.absorption_points", "must be >= 2"});
  if (c.wigner_points < 2) out.push_back({S::Error, "decoherence.wigner_points", "must be >= 2"});
  positive(c.wigner_half_width, "decoherence.wigner_half_width");
  positive(c.saturated_fraction, "decoherence.saturated_fraction");
  positive(c.photons_ir, "decoherence.photons_ir");
  if (c.photons_per_ionization < 1) out.push_back({S::Error, "decoherence.photons_per_ionization", "must be >= 1"});

  positive(c.ce_ref, "budget.ce_ref");
  positive(c.spot_area_ref, "budget.spot_area_ref_cm2");
  positive(c.spot_area_target, "budget.spot_area_target_cm2");
  positive(c.coherent_over_bsv_ratio, "budget.coherent_over_bsv_ratio");
  if (c.threads < 1) out.push_back({S::Error, "run.threads", "must be >= 1"});

  try {
    const auto species = resolve_species(c);
    if (!has_errors(out)) {
      for (const auto& w : ionization::validate_species(species, c.pulse.wavelength_nm)) {
        out.push_back({S::Warning, "species", w});
      }
    }
  } catch (const std::exception& e) {
    out.push_back({S::Error, "species", e.what()});
  }
  return out;
}

bool has_errors(const std::vector<Finding>& findings) {
  for (const auto& f : findings) {
    if (f.severity == Finding::Severity::Error) return true;
  }
  return false;
}

namespace {

nlohmann::json grid_json(const GridSpec& g) {
  return {{"min", g.min}, {"max", g.max}, {"points", g.points}, {"log_spaced", g.log_spaced}, {"values", g.values}};
}

}  // namespace

nlohmann::json to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["species"] = c.species;
  j["species_file"] = c.species_file.empty() ? "" : c.species_file.filename().string();
  j["pulse"] = {{"wavelength_nm", c.pulse.wavelength_nm},
                {"duration_fs", c.pulse.duration_fs},
                {"carrier_phase", c.pulse.carrier_phase},
                {"samples_per_cycle", c.pulse.samples_per_cycle}};
  j["field"] = {{"mean_intensity_w_cm2", c.mean_intensity},
                {"quantization_volume_cm3", c.quantization_volume},
                {"nodes", c.nodes},
                {"yield_quadrature", c.yield_rule == field::QuadratureRule::GaussHermite ? "gauss_hermite" : "trapezoid"},
                {"yield_nodes", c.yield_nodes},
                {"intensity_grid", grid_json(c.intensity_grid)}};
  j["hhg"] = {{"harmonic", c.harmonic},
              {"spreading_regularizer", c.spreading_regularizer},
              {"excursion_cycles", c.excursion_cycles},
              {"max_order", c.max_order},
              {"cutoff_drop_db", c.cutoff_drop_db},
              {"min_node_weight", c.min_node_weight}};
  j["ionization"] = {{"regularizer", c.ionization_regularizer}, {"plasma_includes_mpi", c.plasma_includes_mpi}};
  j["medium"] = {{"density_cm3", c.medium.density},
                 {"length_cm", c.medium.length},
                 {"absorption_cross_section_cm2", c.medium.absorption_cross_section},
                 {"dispersion_mismatch_rad_cm", c.medium.dispersion_mismatch},
                 {"spot_area_cm2", c.medium.spot_area},
                 {"confocal_parameter_cm", c.medium.confocal_parameter}};
  j["propagation"] = {{"paper_literal_eq4", c.paper_literal_eq4},
                      {"scan_max_absorption_lengths", c.scan_max_absorption_lengths},
                      {"scan_points", c.scan_points},
                      {"fig3b_absorption_lengths", c.fig3b_absorption_lengths},
                      {"fig4c_absorption_lengths", c.fig4c_absorption_lengths},
                      {"density_grid", grid_json(c.density_grid)},
                      {"fig4d_bsv_absorption_lengths", c.fig4d_bsv_absorption_lengths},
                      {"fig4d_coherent_absorption_lengths", c.fig4d_coherent_absorption_lengths}};
  j["decoherence"] = {{"squeezing", c.squeezing},
                      {"absorption_points", c.absorption_points},
                      {"wigner_points", c.wigner_points},
                      {"wigner_half_width", c.wigner_half_width},
                      {"saturated_fraction", c.saturated_fraction},
                      {"photons_ir", c.photons_ir},
                      {"photons_per_ionization", c.photons_per_ionization}};
  j["budget"] = {{"ce_ref", c.ce_ref},
                 {"spot_area_ref_cm2", c.spot_area_ref},
                 {"spot_area_target_cm2", c.spot_area_target},
                 {"coherent_over_bsv_ratio", c.coherent_over_bsv_ratio}};
  return j;
}

std::string config_hash(const ScenarioConfig& config) {
  const std::string text = to_json(config).dump();
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::string hex;
  hex.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) hex += fmt::format("{:02x}", b);
  return hex;
}

}  // namespace bsv
