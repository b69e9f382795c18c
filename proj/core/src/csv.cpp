#include "bsvhhg/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bsvhhg/error.hpp"

namespace bsv {

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw DomainError("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError("no CSV column '" + name + "'");
  const auto idx = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i];
  }
  return s;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.12e}", v);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::string to_csv_string(const CsvTable& table) {
  if (table.units.size() != table.columns.size()) throw DomainError("CSV units row does not match the header");
  std::string out = join(table.columns) + '\n' + join(table.units) + '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  const std::string text = to_csv_string(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": missing header row");
  t.columns = split(line);
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": missing units row");
  t.units = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(std::stod(cell));
    t.add_row(std::move(row));
  }
  return t;
}

nlohmann::json csv_schema(const CsvTable& table) {
  return {{"columns", table.columns}, {"units", table.units}, {"rows", table.rows.size()}};
}

}  // namespace bsv
