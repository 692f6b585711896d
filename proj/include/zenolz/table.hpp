// table.hpp — deterministic tabular results and CSV emission.
//
// Every emitted CSV starts with a '#'-prefixed metadata header (tool version,
// config echo and hash, the sign-convention note) followed by one header row
// and data rows. Numbers are written with up to 17 significant digits via
// std::to_chars, which is locale-independent and round-trips doubles exactly;
// identical configs therefore produce byte-identical files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zenolz {

// Shortest-exact decimal form of x (17 significant digits).
std::string format_full(double x);

std::uint64_t fnv1a64(std::string_view text);

struct Column {
  std::string name;
  bool integer = false;  // render as a whole number
};

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_metadata(std::string key, std::string value);
  void add_row(std::initializer_list<double> values);

  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;  // IoError on failure
};

// Convention note carried by every CSV.
extern const char* const kConventionNote;

}  // namespace zenolz
