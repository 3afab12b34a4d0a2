// SPDX-License-Identifier: Apache-2.0
//
// Minimal standalone SVG line charts for the experiment runner.
// Presentation-only: no test contract beyond the file being written.

#pragma once

#include <string>
#include <vector>

namespace qdsim {

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
};

// Render a line chart to `path`.  Throws on IO failure.  Non-finite
// points are skipped (line breaks at gaps).
void write_line_chart(const std::string& path, const ChartSpec& spec);

}  // namespace qdsim
