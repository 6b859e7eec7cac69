#include "moebius/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "moebius/errors.hpp"

namespace moebius {

namespace {

constexpr double kMarginLeft = 70;
constexpr double kMarginRight = 20;
constexpr double kMarginTop = 30;
constexpr double kMarginBottom = 40;
constexpr int kTicks = 5;

std::string xml_escape(const std::string& s) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) lo = hi = 0;
    if (hi - lo < 1e-300) {
      const double w = std::max(1.0, std::abs(lo)) * 0.05;
      lo -= w;
      hi += w;
    }
  }
};

void render_panel(std::ostringstream& out, const Panel& panel, double top, const SvgLayout& layout) {
  Range xr, yr;
  for (const auto& s : panel.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.pad();
  yr.pad();
  const double left = kMarginLeft;
  const double right = layout.width - kMarginRight;
  const double ptop = top + kMarginTop;
  const double pbottom = top + layout.panel_height - kMarginBottom;
  auto px = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * (right - left); };
  auto py = [&](double v) { return pbottom - (v - yr.lo) / (yr.hi - yr.lo) * (pbottom - ptop); };

  out << "<g>\n";
  out << "<text x=\"" << num(left) << "\" y=\"" << num(top + 18) << "\" font-size=\"13\">"
      << xml_escape(panel.title) << "</text>\n";
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(ptop) << "\" width=\"" << num(right - left)
      << "\" height=\"" << num(pbottom - ptop) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(pbottom + 14)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    out << "<text x=\"" << num(left - 4) << "\" y=\"" << num(py(yv) + 3)
        << "\" font-size=\"10\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  out << "<text x=\"" << num(0.5 * (left + right)) << "\" y=\"" << num(pbottom + 30)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << xml_escape(panel.x_label) << "</text>\n";
  out << "<text x=\"12\" y=\"" << num(0.5 * (ptop + pbottom)) << "\" font-size=\"11\" transform=\"rotate(-90 12 "
      << num(0.5 * (ptop + pbottom)) << ")\" text-anchor=\"middle\">" << xml_escape(panel.y_label) << "</text>\n";

  double legend_y = ptop + 14;
  for (const auto& s : panel.series) {
    const std::string color = xml_escape(s.color);
    if (s.x.size() == 1) {
      out << "<circle cx=\"" << num(px(s.x[0])) << "\" cy=\"" << num(py(s.y[0])) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      }
      out << "\"/>\n";
    }
    if (!s.label.empty()) {
      out << "<text x=\"" << num(right - 6) << "\" y=\"" << num(legend_y) << "\" font-size=\"11\" fill=\"" << color
          << "\" text-anchor=\"end\">" << xml_escape(s.label) << "</text>\n";
      legend_y += 14;
    }
  }
  out << "</g>\n";
}

}  // namespace

std::string render_svg(std::span<const Panel> panels, const SvgLayout& layout) {
  if (panels.empty()) throw ContractError("render_svg: nothing to draw");
  for (const auto& panel : panels) {
    std::size_t points = 0;
    for (const auto& s : panel.series) {
      if (s.x.size() != s.y.size()) throw ContractError("render_svg: series '" + s.label + "' has mismatched x/y");
      points += s.x.size();
    }
    if (points == 0) throw ContractError("render_svg: panel '" + panel.title + "' has no data");
  }
  const int height = layout.panel_height * static_cast<int>(panels.size());
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << layout.width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << layout.width << ' ' << height << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(out, panels[i], static_cast<double>(i) * layout.panel_height, layout);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace moebius
