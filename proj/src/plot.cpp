#include "groovegait/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "groovegait/format.hpp"

namespace groovegait {

namespace {

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) { return format_number(v, 6); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  if (series.empty()) throw std::invalid_argument("render_svg: no series");

  double t_max = 0;
  double h_max = 0;
  for (const auto& s : series) {
    if (s.time_s.size() != s.heading_deg.size())
      throw std::invalid_argument("render_svg: time and heading lengths differ");
    for (double t : s.time_s) t_max = std::max(t_max, t);
    for (double h : s.heading_deg) h_max = std::max(h_max, std::abs(h));
  }
  if (t_max <= 0) t_max = 1;
  const double y_range = h_max > 0 ? 1.1 * h_max : 1.0;

  const double left = 70, right = 170, top = 20, bottom = 50;
  const double pw = options.width_px - left - right;
  const double ph = options.height_px - top - bottom;
  const double mid = top + ph / 2;
  auto px = [&](double t) { return left + t / t_max * pw; };
  auto py = [&](double h) { return mid - h / y_range * (ph / 2); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width_px
      << "\" height=\"" << options.height_px << "\" viewBox=\"0 0 " << options.width_px << ' '
      << options.height_px << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << options.width_px << "\" height=\""
      << options.height_px << "\" fill=\"white\"/>\n";

  // Frame, zero axis and ticks.
  svg << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(mid) << "\" x2=\"" << fmt(left + pw)
      << "\" y2=\"" << fmt(mid) << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = t_max * i / 4.0;
    const double h = y_range * (i - 2) / 2.0;
    svg << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(top + ph + 16)
        << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    svg << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(py(h) + 4)
        << "\" text-anchor=\"end\">" << fmt(h) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(options.height_px - 10.0)
      << "\" text-anchor=\"middle\">time (s)</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt(mid) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt(mid) << ")\">orientation (deg)</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kColors[k % kColors.size()];
    if (options.tile_markers) {
      for (double t : s.boundary_times_s)
        svg << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(t))
            << "\" y2=\"" << fmt(top + ph) << "\" stroke=\"" << color
            << "\" stroke-dasharray=\"4 3\" stroke-width=\"0.8\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.time_s.size(); ++i) {
      if (i) svg << ' ';
      svg << fmt(px(s.time_s[i])) << ',' << fmt(py(s.heading_deg[i]));
    }
    svg << "\"/>\n";

    const double ly = top + 14 + 18.0 * static_cast<double>(k);
    svg << "<line x1=\"" << fmt(left + pw + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(left + pw + 36) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << fmt(left + pw + 42) << "\" y=\"" << fmt(ly) << "\">" << escape(s.label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace groovegait
