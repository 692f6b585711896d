// svg.hpp — self-contained SVG line plots (no external renderer). Convenience
// artifacts only; nothing downstream parses them.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace zenolz {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  bool log_y = false;
};

std::string render_line_plot(const PlotSpec& spec, std::span<const Series> series);
void write_line_plot(const std::filesystem::path& path, const PlotSpec& spec,
                     std::span<const Series> series);

}  // namespace zenolz
