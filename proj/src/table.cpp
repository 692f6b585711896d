#include "zenolz/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "zenolz/errors.hpp"

namespace zenolz {

const char* const kConventionNote =
    "Jz = (n_excited - n_ground)/2, ground state Jz = -N/2; "
    "energies, rates and 1/time in units of delta";

std::string format_full(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void ResultTable::add_metadata(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void ResultTable::add_row(std::initializer_list<double> values) {
  if (values.size() != columns.size())
    throw DomainError("ResultTable: row width does not match column count");
  rows.emplace_back(values);
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (const auto& [k, v] : metadata) {
    out += "# ";
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c].name;
  }
  out += '\n';
  char ibuf[24];
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      if (columns[c].integer) {
        const auto res = std::to_chars(ibuf, ibuf + sizeof(ibuf),
                                       static_cast<long long>(std::llround(row[c])));
        out.append(ibuf, res.ptr);
      } else {
        out += format_full(row[c]);
      }
    }
    out += '\n';
  }
  return out;
}

void ResultTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  const std::string body = to_csv();
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace zenolz
