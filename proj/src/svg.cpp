// SPDX-License-Identifier: Apache-2.0

#include "qdsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qdsim/experiment.hpp"

namespace qdsim {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Step size covering range/count with a 1-2-5 mantissa.
double nice_step(double range, int count) {
  const double raw = range / std::max(1, count);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  if (norm <= 1.0) return mag;
  if (norm <= 2.0) return 2.0 * mag;
  if (norm <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void ensure_valid() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
};

}  // namespace

void write_line_chart(const std::string& path, const ChartSpec& spec) {
  Range xr, yr;
  for (const ChartSeries& s : spec.series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.ensure_valid();
  yr.ensure_valid();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double x) {
    return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto py = [&](double y) {
    return kMarginTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"18\">"
      << spec.title << "</text>\n";

  // Axes frame.
  svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
      << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks and grid.
  const double xstep = nice_step(xr.hi - xr.lo, 8);
  for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + 1e-9;
       x += xstep) {
    const double gx = px(x);
    svg << "<line x1=\"" << fmt(gx) << "\" y1=\"" << kMarginTop
        << "\" x2=\"" << fmt(gx) << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << fmt(gx) << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << fmt(x) << "</text>\n";
  }
  const double ystep = nice_step(yr.hi - yr.lo, 8);
  for (double y = std::ceil(yr.lo / ystep) * ystep; y <= yr.hi + 1e-9;
       y += ystep) {
    const double gy = py(y);
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << fmt(gy)
        << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << fmt(gy)
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(gy + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << fmt(y) << "</text>\n";
  }

  // Axis labels.
  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
      << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << spec.x_label << "</text>\n"
      << "<text x=\"20\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 20 "
      << kMarginTop + plot_h / 2 << ")\">" << spec.y_label << "</text>\n";

  // Series polylines, broken at non-finite points.
  int color_idx = 0;
  for (const ChartSeries& s : spec.series) {
    const char* color = kPalette[color_idx % kPaletteSize];
    std::ostringstream points;
    bool open = false;
    const size_t count = std::min(s.x.size(), s.y.size());
    for (size_t i = 0; i < count; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        if (open) {
          svg << "<polyline fill=\"none\" stroke=\"" << color
              << "\" stroke-width=\"2\""
              << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
              << " points=\"" << points.str() << "\"/>\n";
          points.str("");
          open = false;
        }
        continue;
      }
      points << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
      open = true;
    }
    if (open) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\""
          << points.str() << "\"/>\n";
    }
    // Legend entry.
    const int ly = kMarginTop + 18 + 20 * color_idx;
    svg << "<line x1=\"" << kMarginLeft + 12 << "\" y1=\"" << ly
        << "\" x2=\"" << kMarginLeft + 44 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
        << "<text x=\"" << kMarginLeft + 50 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
        << "</text>\n";
    ++color_idx;
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("svg: cannot open output file: " + path);
  }
  out << svg.str();
  out.flush();
  if (!out.good()) {
    throw IoError("svg: write failed: " + path);
  }
}

}  // namespace qdsim
