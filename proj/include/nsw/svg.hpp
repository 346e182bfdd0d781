#pragma once

#include <string>
#include <vector>

namespace nsw {

struct PlotSeries {
  std::string label;
  std::string color = "#1f77b4";
  bool line = true;
  bool markers = true;
  bool dashed = false;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_err;  // empty = no error bars
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  int width = 640;
  int height = 440;
};

// Self-contained SVG document: axes, ticks, series with optional error
// bars and legend. Byte-deterministic for identical input.
std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace nsw
