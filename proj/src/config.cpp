#include "zenolz/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "zenolz/errors.hpp"
#include "zenolz/table.hpp"

namespace zenolz {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const std::set<std::string> kModeNames = {"discrete", "meanfield", "exact",
                                          "readout",  "tmin",      "sweep"};

// Allowed keys per section.
const std::map<std::string, std::set<std::string>> kSchema = {
    {"discrete", {"delta", "epsilon0", "T", "N", "n", "out"}},
    {"meanfield",
     {"delta", "epsilon0", "T", "gamma_x", "gamma_z", "N", "samples", "rtol", "atol", "out"}},
    {"exact",
     {"delta", "epsilon0", "T", "gamma_x", "gamma_z", "N", "samples", "rtol", "atol", "out"}},
    {"readout", {"N", "target_pe", "out"}},
    {"tmin",
     {"delta", "epsilon0", "gamma_x", "gamma_z", "N", "target_pe", "t_lo", "t_hi", "t_precision",
      "rtol", "atol", "out"}},
    {"sweep",
     {"delta", "epsilon0", "T", "gamma_x", "gamma_z", "N", "tmin_N", "samples", "target_pe",
      "t_lo", "t_hi", "t_precision", "rtol", "atol", "out"}},
};

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc{} && res.ptr == e;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const auto res = std::from_chars(b, e, out);
  if (res.ec == std::errc{} && res.ptr == e) return true;
  // accept integral-valued floats (1e3)
  double d;
  if (!parse_double(s, d)) return false;
  if (std::abs(d) > 9e15 || d != std::floor(d)) return false;
  out = static_cast<std::int64_t>(d);
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// "a,b,c" or "log:lo,hi,count"
bool parse_grid(std::string_view s, std::vector<double>& out, std::string& err) {
  s = trim(s);
  if (s.substr(0, 4) == "log:") {
    const auto parts = split(s.substr(4), ',');
    double lo, hi;
    std::int64_t count;
    if (parts.size() != 3 || !parse_double(parts[0], lo) || !parse_double(parts[1], hi) ||
        !parse_int(parts[2], count)) {
      err = "log grid must be log:<lo>,<hi>,<count>";
      return false;
    }
    if (!(lo > 0.0) || !(hi > 0.0) || count < 1) {
      err = "log grid needs lo > 0, hi > 0, count >= 1";
      return false;
    }
    out.clear();
    if (count == 1) {
      out.push_back(lo);
      return true;
    }
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (std::int64_t i = 0; i < count; ++i)
      out.push_back(std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) /
                                             static_cast<double>(count - 1)));
    return true;
  }
  out.clear();
  for (const auto part : split(s, ',')) {
    double v;
    if (!parse_double(part, v)) {
      err = "'" + std::string(trim(part)) + "' is not a number";
      return false;
    }
    out.push_back(v);
  }
  return !out.empty();
}

bool parse_int_grid(std::string_view s, std::vector<std::int64_t>& out, std::string& err) {
  std::vector<double> vals;
  if (!parse_grid(s, vals, err)) return false;
  out.clear();
  for (const double v : vals) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6 * std::max(1.0, std::abs(v))) {
      err = "expected integer values, got " + format_full(v);
      return false;
    }
    out.push_back(static_cast<std::int64_t>(r));
  }
  return true;
}

struct RawEntry {
  std::string value;
  int line;
};
using Section = std::map<std::string, RawEntry>;

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_full(v[i]);
  }
  return s;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::discrete: return "discrete";
    case RunMode::meanfield: return "meanfield";
    case RunMode::exact: return "exact";
    case RunMode::readout: return "readout";
    case RunMode::tmin: return "tmin";
    case RunMode::sweep: return "sweep";
  }
  return "?";
}

ConfigError::ConfigError(std::vector<ConfigViolation> violations)
    : std::runtime_error([&violations] {
        std::string msg = "config validation failed:";
        for (const auto& v : violations) {
          msg += "\n  " + v.key;
          if (v.line > 0) msg += " (line " + std::to_string(v.line) + ")";
          msg += ": " + v.message;
        }
        return msg;
      }()),
      violations_(std::move(violations)) {}

RunConfig default_config(RunMode mode) {
  RunConfig cfg;
  cfg.mode = mode;
  switch (mode) {
    case RunMode::discrete:
      cfg.N = {100};
      break;
    case RunMode::readout:
      cfg.N = {10, 100, 1000, 10000, 100000, 1000000};
      break;
    case RunMode::tmin:
      cfg.N = {10, 100, 1000, 10000};
      cfg.gamma_x = {0.1};
      cfg.gamma_z = {0.0};
      break;
    case RunMode::exact:
      cfg.N = {1, 4, 16};
      break;
    default:
      break;
  }
  finalize_config(cfg);
  return cfg;
}

void finalize_config(RunConfig& cfg) {
  std::ostringstream os;
  os << "mode=" << to_string(cfg.mode);
  os << ";delta=" << format_full(cfg.delta);
  os << ";epsilon0=" << format_full(cfg.epsilon0);
  switch (cfg.mode) {
    case RunMode::discrete:
      os << ";N=" << join_ints(cfg.N) << ";n=" << join_ints(cfg.n);
      break;
    case RunMode::meanfield:
    case RunMode::exact:
      os << ";T=" << format_full(cfg.T) << ";gamma_x=" << join_doubles(cfg.gamma_x)
         << ";gamma_z=" << join_doubles(cfg.gamma_z) << ";N=" << join_ints(cfg.N)
         << ";samples=" << cfg.samples << ";rtol=" << format_full(cfg.rtol)
         << ";atol=" << format_full(cfg.atol);
      break;
    case RunMode::readout:
      os << ";N=" << join_ints(cfg.N) << ";target_pe=" << format_full(cfg.target_pe);
      break;
    case RunMode::tmin:
      os << ";gamma_x=" << join_doubles(cfg.gamma_x) << ";gamma_z=" << join_doubles(cfg.gamma_z)
         << ";N=" << join_ints(cfg.N) << ";target_pe=" << format_full(cfg.target_pe)
         << ";t_lo=" << format_full(cfg.t_lo) << ";t_hi=" << format_full(cfg.t_hi)
         << ";t_precision=" << format_full(cfg.t_precision) << ";rtol=" << format_full(cfg.rtol)
         << ";atol=" << format_full(cfg.atol);
      break;
    case RunMode::sweep:
      os << ";T=" << format_full(cfg.T) << ";gamma_x=" << join_doubles(cfg.gamma_x)
         << ";gamma_z=" << join_doubles(cfg.gamma_z) << ";N=" << join_ints(cfg.N)
         << ";tmin_N=" << join_ints(cfg.tmin_N) << ";samples=" << cfg.samples
         << ";target_pe=" << format_full(cfg.target_pe) << ";t_lo=" << format_full(cfg.t_lo)
         << ";t_hi=" << format_full(cfg.t_hi) << ";t_precision=" << format_full(cfg.t_precision)
         << ";rtol=" << format_full(cfg.rtol) << ";atol=" << format_full(cfg.atol);
      break;
  }
  cfg.canonical = os.str();
  cfg.config_hash = fnv1a64(cfg.canonical);
}

RunConfig parse_config(std::string_view text, RunMode mode) {
  std::vector<ConfigViolation> bad;
  std::map<std::string, Section> sections;

  // ---- line scan ---------------------------------------------------------
  std::string current;  // active section name; empty = none yet
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (const auto semi = line.find(';'); semi != std::string_view::npos)
      line = line.substr(0, semi);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        bad.push_back({"(section)", line_no, "unterminated section header"});
        continue;
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!kModeNames.count(name)) {
        bad.push_back({name, line_no, "unknown section (expected one of the run modes)"});
        current.clear();
        continue;
      }
      current = name;
      sections[current];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      bad.push_back({current.empty() ? "(top level)" : current, line_no,
                     "expected key = value"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (current.empty()) {
      bad.push_back({key, line_no, "key appears before any section header"});
      continue;
    }
    const auto& allowed = kSchema.at(current);
    if (!allowed.count(key)) {
      bad.push_back({current + "." + key, line_no, "unknown key"});
      continue;
    }
    auto [it, inserted] = sections[current].emplace(key, RawEntry{value, line_no});
    if (!inserted) bad.push_back({current + "." + key, line_no, "duplicate key"});
  }

  // ---- apply the selected section on top of the defaults -----------------
  RunConfig cfg = default_config(mode);
  const std::string mode_name = to_string(mode);
  std::map<std::string, int> key_lines;

  const auto sec_it = sections.find(mode_name);
  if (sec_it != sections.end()) {
    for (const auto& [key, entry] : sec_it->second) {
      const std::string path = mode_name + "." + key;
      key_lines[key] = entry.line;
      std::string err;
      const auto fail = [&](const std::string& msg) { bad.push_back({path, entry.line, msg}); };

      if (key == "delta" || key == "epsilon0" || key == "T" || key == "target_pe" ||
          key == "rtol" || key == "atol" || key == "t_lo" || key == "t_hi" ||
          key == "t_precision") {
        double v;
        if (!parse_double(entry.value, v)) {
          fail("'" + entry.value + "' is not a number");
          continue;
        }
        if (key == "delta") cfg.delta = v;
        else if (key == "epsilon0") cfg.epsilon0 = v;
        else if (key == "T") cfg.T = v;
        else if (key == "target_pe") cfg.target_pe = v;
        else if (key == "rtol") cfg.rtol = v;
        else if (key == "atol") cfg.atol = v;
        else if (key == "t_lo") cfg.t_lo = v;
        else if (key == "t_hi") cfg.t_hi = v;
        else cfg.t_precision = v;
      } else if (key == "samples") {
        std::int64_t v;
        if (!parse_int(entry.value, v)) {
          fail("'" + entry.value + "' is not an integer");
          continue;
        }
        cfg.samples = static_cast<int>(v);
      } else if (key == "gamma_x" || key == "gamma_z") {
        std::vector<double> grid;
        if (!parse_grid(entry.value, grid, err)) {
          fail(err);
          continue;
        }
        (key == "gamma_x" ? cfg.gamma_x : cfg.gamma_z) = grid;
      } else if (key == "N" || key == "n" || key == "tmin_N") {
        std::vector<std::int64_t> grid;
        if (!parse_int_grid(entry.value, grid, err)) {
          fail(err);
          continue;
        }
        if (key == "N") cfg.N = grid;
        else if (key == "n") cfg.n = grid;
        else cfg.tmin_N = grid;
      } else if (key == "out") {
        cfg.out_dir = entry.value;
      }
    }
  }

  // ---- type-check the non-selected sections too ---------------------------
  for (const auto& [sec, entries] : sections) {
    if (sec == mode_name) continue;
    for (const auto& [key, entry] : entries) {
      std::string err;
      std::vector<double> dgrid;
      std::vector<std::int64_t> igrid;
      double d;
      std::int64_t i;
      bool ok = true;
      if (key == "out") ok = true;
      else if (key == "N" || key == "n" || key == "tmin_N") ok = parse_int_grid(entry.value, igrid, err);
      else if (key == "gamma_x" || key == "gamma_z") ok = parse_grid(entry.value, dgrid, err);
      else if (key == "samples") ok = parse_int(entry.value, i);
      else ok = parse_double(entry.value, d);
      if (!ok)
        bad.push_back({sec + "." + key, entry.line,
                       err.empty() ? "'" + entry.value + "' has the wrong type" : err});
    }
  }

  // ---- invariant validation ----------------------------------------------
  const auto line_of = [&](const char* key) {
    const auto it = key_lines.find(key);
    return it == key_lines.end() ? 0 : it->second;
  };
  const auto invalid = [&](const char* key, const std::string& msg) {
    bad.push_back({mode_name + std::string(".") + key, line_of(key), msg});
  };

  if (!(cfg.delta > 0.0))
    invalid("delta", "must be > 0: the sweep requires a non-zero minimum gap");
  else if (!(cfg.epsilon0 > cfg.delta))
    invalid("epsilon0", "must exceed delta (the sweep assumes epsilon0 >> delta)");
  if (!(cfg.T > 0.0)) invalid("T", "must be > 0");
  for (const double g : cfg.gamma_x)
    if (g < 0.0) invalid("gamma_x", "relaxation rates must be non-negative");
  for (const double g : cfg.gamma_z)
    if (g < 0.0) invalid("gamma_z", "relaxation rates must be non-negative");
  for (const auto v : cfg.N)
    if (v < 1) invalid("N", "boson counts must be >= 1");
  for (const auto v : cfg.n)
    if (v < 1) invalid("n", "measurement counts must be >= 1");
  for (const auto v : cfg.tmin_N)
    if (v < 1) invalid("tmin_N", "boson counts must be >= 1");
  if (!(cfg.target_pe > 0.0 && cfg.target_pe <= 0.5))
    invalid("target_pe", "must lie in (0, 1/2]");
  if (cfg.samples < 2) invalid("samples", "needs at least 2 output samples");
  if (!(cfg.rtol > 0.0)) invalid("rtol", "must be > 0");
  if (!(cfg.atol > 0.0)) invalid("atol", "must be > 0");
  if (!(cfg.t_lo > 0.0)) invalid("t_lo", "must be > 0");
  if (!(cfg.t_hi > cfg.t_lo)) invalid("t_hi", "must exceed t_lo");
  if (!(cfg.t_precision > 0.0 && cfg.t_precision <= 0.1))
    invalid("t_precision", "must lie in (0, 0.1]");
  if (mode == RunMode::tmin) {
    if (cfg.gamma_x.size() != 1) invalid("gamma_x", "tmin expects a single value");
    if (cfg.gamma_z.size() != 1) invalid("gamma_z", "tmin expects a single value");
  }

  if (!bad.empty()) throw ConfigError(std::move(bad));

  if (cfg.delta > 0.0 && cfg.epsilon0 < 5.0 * cfg.delta)
    cfg.warnings.push_back("epsilon0/delta = " + format_full(cfg.epsilon0 / cfg.delta) +
                           " is below 5; the sweep assumes epsilon0 >> delta");

  finalize_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path, RunMode mode) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), mode);
}

}  // namespace zenolz
