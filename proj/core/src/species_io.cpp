#include <yaml-cpp/yaml.h>

#include "bsvhhg/error.hpp"
#include "bsvhhg/ionization.hpp"

namespace bsv::ionization {

namespace {

std::string where(const YAML::Node& node) {
  const auto mark = node.Mark();
  return "line " + std::to_string(mark.line + 1) + ", column " + std::to_string(mark.column + 1);
}

template <typename T>
T required(const YAML::Node& entry, const char* key) {
  const YAML::Node value = entry[key];
  if (!value) throw ConfigError(std::string("species entry at ") + where(entry) + ": missing '" + key + "'");
  try {
    return value.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(std::string("species field '") + key + "' at " + where(value) + " has the wrong type");
  }
}

}  // namespace

std::map<std::string, AtomSpecies> load_species_file(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::ParserException& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot read species file " + path.string());
  }
  const YAML::Node list = root["species"];
  if (!list || !list.IsSequence()) throw ConfigError(path.string() + ": expected a 'species' list");

  std::map<std::string, AtomSpecies> out;
  for (const auto& entry : list) {
    AtomSpecies s;
    s.name = required<std::string>(entry, "name");
    s.ionization_potential = required<double>(entry, "ionization_potential_au");
    s.core_charge = required<double>(entry, "core_charge");
    s.mpi_order = required<int>(entry, "mpi_order");
    try {
      s.log10_mpi_cross_section = parse_log10(required<std::string>(entry, "mpi_cross_section"));
    } catch (const DomainError& e) {
      throw ConfigError("species '" + s.name + "': mpi_cross_section " + e.what());
    }
    if (out.contains(s.name)) throw ConfigError("duplicate species '" + s.name + "'");
    out.emplace(s.name, s);
  }
  return out;
}

AtomSpecies load_species(const std::filesystem::path& path, const std::string& name) {
  auto all = load_species_file(path);
  auto it = all.find(name);
  if (it == all.end()) throw ConfigError("species '" + name + "' not found in " + path.string());
  return it->second;
}

}  // namespace bsv::ionization
