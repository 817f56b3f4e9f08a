#pragma once

#include <string>
#include <vector>

namespace groovegait {

struct PlotSeries {
  std::string label;
  std::vector<double> time_s;
  std::vector<double> heading_deg;
  /// Times at which the front foot changed tile; drawn as dashed markers.
  std::vector<double> boundary_times_s;
};

struct PlotOptions {
  int width_px = 800;
  int height_px = 480;
  bool tile_markers = false;
};

/// Heading-vs-time chart. The vertical range is symmetric about zero so the
/// zero axis sits at mid-height. All numbers are printed at 6 significant digits.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options = {});

}  // namespace groovegait
