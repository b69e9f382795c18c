#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace bsv {

/// Numeric table written as: header row, units row, then data rows.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;
};

std::string to_csv_string(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

/// {"columns": [...], "units": [...], "rows": n}
nlohmann::json csv_schema(const CsvTable& table);

}  // namespace bsv
