#pragma once

// Self-contained SVG line charts: one or more panels stacked vertically, each
// with axes, tick labels and a polyline per series.

#include <span>
#include <string>
#include <vector>

namespace moebius {

struct Series {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

struct SvgLayout {
  int width = 720;
  int panel_height = 260;
};

/// Throws ContractError when there is no panel, a panel has no points, or
/// x and y lengths differ. A series with one point renders as a dot.
std::string render_svg(std::span<const Panel> panels, const SvgLayout& layout = {});

}  // namespace moebius
