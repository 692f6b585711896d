// csv_checks.hpp — test-side CSV schema validator for emitted result files.

#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zenolz::testing {

struct CsvDoc {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Parses an emitted CSV and enforces the shared schema: metadata header with
// the required keys, the expected column row, and fully numeric data rows.
inline CsvDoc load_and_validate_csv(const std::string& path,
                                    const std::vector<std::string>& expected_columns) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  CsvDoc doc;
  std::string line;
  bool in_header = true;
  while (std::getline(f, line)) {
    if (in_header && line.rfind("# ", 0) == 0) {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos) throw std::runtime_error("malformed metadata: " + line);
      doc.metadata[line.substr(2, eq - 2)] = line.substr(eq + 3);
      continue;
    }
    if (in_header) {
      in_header = false;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) doc.header.push_back(cell);
      if (doc.header != expected_columns)
        throw std::runtime_error("unexpected column schema in " + path + ": got '" + line + "'");
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw std::runtime_error("non-numeric cell '" + cell + "' in " + path);
      row.push_back(v);
    }
    if (row.size() != expected_columns.size())
      throw std::runtime_error("row width mismatch in " + path);
    doc.rows.push_back(std::move(row));
  }
  for (const char* key : {"tool", "mode", "config", "config_hash", "convention"})
    if (!doc.metadata.count(key))
      throw std::runtime_error(std::string("metadata key missing: ") + key + " in " + path);
  if (doc.rows.empty()) throw std::runtime_error("no data rows in " + path);
  return doc;
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace zenolz::testing
