#include "varprop/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "varprop/csv.hpp"

namespace varprop {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kMarginLeft = 72, kMarginRight = 24, kMarginTop = 40, kMarginBottom = 56;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double min = 0.0, max = 1.0;
  bool log = false;

  double to_unit(double v) const {
    if (log) return (std::log10(v) - std::log10(min)) / (std::log10(max) - std::log10(min));
    return (v - min) / (max - min);
  }
  bool accepts(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis fit_axis(const std::vector<PlotSeries>& series, bool take_x, bool log) {
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    const auto& v = take_x ? s.x : s.y;
    for (const double value : v) {
      if (!std::isfinite(value) || (log && value <= 0.0)) continue;
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
  }
  if (!(lo < hi)) {
    lo = std::isfinite(lo) ? lo : (log ? 0.1 : 0.0);
    hi = lo + (log ? 9.0 * lo + 1.0 : 1.0);
  }
  if (!log) {
    const double pad = 0.05 * (hi - lo);
    axis.min = lo == 0.0 ? 0.0 : lo - pad;
    if (lo >= 0.0 && axis.min < 0.0) axis.min = 0.0;
    axis.max = hi + pad;
  } else {
    axis.min = lo;
    axis.max = hi;
  }
  return axis;
}

std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    const int lo = static_cast<int>(std::floor(std::log10(axis.min)));
    const int hi = static_cast<int>(std::ceil(std::log10(axis.max)));
    for (int e = lo; e <= hi; ++e) {
      const double v = std::pow(10.0, e);
      if (v >= axis.min * 0.999 && v <= axis.max * 1.001) out.push_back(v);
    }
    if (out.size() < 2) out = {axis.min, axis.max};
  } else {
    for (int i = 0; i <= 4; ++i) out.push_back(axis.min + (axis.max - axis.min) * i / 4.0);
  }
  return out;
}

}  // namespace

std::string render_line_plot(const std::vector<PlotSeries>& series,
                             const PlotOptions& options) {
  const double plot_w = options.width - kMarginLeft - kMarginRight;
  const double plot_h = options.height - kMarginTop - kMarginBottom;
  const Axis ax = fit_axis(series, true, options.log_x);
  const Axis ay = fit_axis(series, false, options.log_y);
  const auto px = [&](double v) { return kMarginLeft + ax.to_unit(v) * plot_w; };
  const auto py = [&](double v) { return kMarginTop + (1.0 - ay.to_unit(v)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
      << options.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(options.title)
        << "</text>\n";
  }
  svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (const double t : ticks(ax)) {
    const double x = px(t);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kMarginTop + plot_h) << "\" x2=\""
        << fmt(x) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kMarginTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_tick(t) << "</text>\n";
  }
  for (const double t : ticks(ay)) {
    const double y = py(t);
    svg << "<line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(kMarginLeft) << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_tick(t)
        << "</text>\n";
  }
  if (!options.x_label.empty()) {
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << options.height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(options.x_label) << "</text>\n";
  }
  if (!options.y_label.empty()) {
    svg << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2 << ")\">"
        << escape(options.y_label) << "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!ax.accepts(s.x[i]) || !ay.accepts(s.y[i])) continue;
      pts << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << pts.str() << "\"/>\n";
    const double ly = kMarginTop + 14 + 16 * static_cast<double>(si);
    svg << "<line x1=\"" << fmt(kMarginLeft + plot_w - 150) << "\" y1=\"" << fmt(ly - 4)
        << "\" x2=\"" << fmt(kMarginLeft + plot_w - 130) << "\" y2=\"" << fmt(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << fmt(kMarginLeft + plot_w - 125) << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
               const PlotOptions& options) {
  atomic_write(path, render_line_plot(series, options));
}

}  // namespace varprop
