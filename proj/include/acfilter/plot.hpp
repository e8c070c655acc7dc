#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "acfilter/field2d.hpp"

namespace acfilter::plot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;  // non-positive values are dropped
  std::vector<Series> series;
};

/// Static SVG line chart with axes, ticks and a legend.
void write_svg(const std::filesystem::path& path, const LinePlot& plot);

/// Static SVG heatmap of a 2D field (blue -1, white 0, red +1).
void write_heatmap_svg(const std::filesystem::path& path, const SpectralField2D& u,
                       const std::string& title);

}  // namespace acfilter::plot
