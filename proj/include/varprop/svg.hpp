#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace varprop {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 800;
  int height = 560;
};

/// Static SVG 1.1 line plot with no timestamps or randomness: identical
/// inputs produce identical bytes. Non-finite points, and nonpositive
/// points on log axes, are skipped.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

void write_svg(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
               const PlotOptions& options);

}  // namespace varprop
