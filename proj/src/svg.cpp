#include "zenolz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "zenolz/errors.hpp"

namespace zenolz {

namespace {

constexpr double kWidth = 760, kHeight = 520;
constexpr double kLeft = 72, kRight = 24, kTop = 40, kBottom = 56;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double map(double v, double pix_lo, double pix_hi) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return pix_lo + (x - a) / (b - a) * (pix_hi - pix_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      const int d0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
      const int d1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
      for (int d = d0; d <= d1; ++d) t.push_back(std::pow(10.0, d));
      if (t.size() < 2) {
        t = {lo, hi};
      }
      return t;
    }
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 0.5 * step; v += step) t.push_back(v);
    return t;
  }
};

}  // namespace

std::string render_line_plot(const PlotSpec& spec, std::span<const Series> series) {
  Axis xa, ya;
  xa.log = spec.log_x;
  ya.log = spec.log_y;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (spec.log_x && x <= 0.0) continue;
      if (spec.log_y && y <= 0.0) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin < xmax)) {
    xmax = xmin + 1;
    xmin -= 1;
  }
  if (!(ymin < ymax)) {
    ymax = ymin + (spec.log_y ? ymin : 1.0);
    ymin -= spec.log_y ? 0.0 : 1.0;
  }
  if (!spec.log_y) {
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
  }
  xa.lo = xmin;
  xa.hi = xmax;
  ya.lo = ymin;
  ya.hi = ymax;

  const double px0 = kLeft, px1 = kWidth - kRight;
  const double py0 = kHeight - kBottom, py1 = kTop;  // y grows upward

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\""
         " text-anchor=\"middle\">" + spec.title + "</text>\n";

  // frame + ticks
  svg += "<rect x=\"" + num(px0) + "\" y=\"" + num(py1) + "\" width=\"" + num(px1 - px0) +
         "\" height=\"" + num(py0 - py1) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (const double tx : xa.ticks()) {
    if (tx < xa.lo - 1e-12 || tx > xa.hi * (xa.log ? 1.0 + 1e-12 : 1.0) + 1e-12) continue;
    const double px = xa.map(tx, px0, px1);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(px) + "\" y2=\"" +
           num(py0 + 5) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(py0 + 20) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + num(tx) +
           "</text>\n";
  }
  for (const double ty : ya.ticks()) {
    if (ty < ya.lo - 1e-12 || ty > ya.hi + 1e-12) continue;
    const double py = ya.map(ty, py0, py1);
    svg += "<line x1=\"" + num(px0 - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(px0) +
           "\" y2=\"" + num(py) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(px0 - 8) + "\" y=\"" + num(py + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + num(ty) +
           "</text>\n";
  }
  svg += "<text x=\"" + num((px0 + px1) / 2) + "\" y=\"" + num(kHeight - 14) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + spec.xlabel +
         "</text>\n";
  svg += "<text x=\"18\" y=\"" + num((py0 + py1) / 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num((py0 + py1) / 2) + ")\">" + spec.ylabel + "</text>\n";

  // data
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
      pts += num(xa.map(x, px0, px1)) + "," + num(ya.map(y, py0, py1)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  // legend
  double ly = py1 + 16;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const double lx = px1 - 170;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 24) +
           "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + series[si].label + "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

void write_line_plot(const std::filesystem::path& path, const PlotSpec& spec,
                     std::span<const Series> series) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  const std::string body = render_line_plot(spec, series);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace zenolz
