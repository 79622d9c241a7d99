#include "tli_app/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tli::app {
namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 220.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr double kGap = 20.0;

constexpr std::array<const char*, 6> kColours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo < 1e-300 * std::max(1.0, std::abs(lo))) {
      const double d = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
      lo -= d;
      hi += d;
    }
  }
};

std::vector<double> ticks(const Range& r) {
  const double span = r.hi - r.lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

}  // namespace

std::string render_svg(const Figure& fig) {
  const double plot_w = kWidth - kLeft - kRight;
  const std::size_t np = std::max<std::size_t>(fig.panels.size(), 1);
  const double height = kTop + kBottom + np * kPanelHeight + (np - 1) * kGap;

  Range xr;
  for (const auto& p : fig.panels) {
    for (const auto& s : p.series) {
      for (double x : s.x) xr.add(x);
    }
  }
  xr.pad();
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(fig.title) + "</text>\n";

  for (std::size_t k = 0; k < fig.panels.size(); ++k) {
    const auto& panel = fig.panels[k];
    const double top = kTop + k * (kPanelHeight + kGap);
    const double bottom = top + kPanelHeight;
    Range yr;
    for (const auto& s : panel.series) {
      for (double y : s.y) yr.add(y);
    }
    yr.pad();
    auto py = [&](double y) { return bottom - (y - yr.lo) / (yr.hi - yr.lo) * kPanelHeight; };

    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) + "\" height=\"" +
           num(kPanelHeight) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(yr)) {
      svg += "<line x1=\"" + num(kLeft - 4) + "\" x2=\"" + num(kLeft) + "\" y1=\"" + num(py(t)) + "\" y2=\"" +
             num(py(t)) + "\" stroke=\"black\"/>";
      svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" + num(t) +
             "</text>\n";
    }
    if (k + 1 == fig.panels.size()) {
      for (double t : ticks(xr)) {
        svg += "<line x1=\"" + num(px(t)) + "\" x2=\"" + num(px(t)) + "\" y1=\"" + num(bottom) + "\" y2=\"" +
               num(bottom + 4) + "\" stroke=\"black\"/>";
        svg += "<text x=\"" + num(px(t)) + "\" y=\"" + num(bottom + 18) + "\" text-anchor=\"middle\">" + num(t) +
               "</text>\n";
      }
      svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(bottom + 38) + "\" text-anchor=\"middle\">" +
             escape(fig.x_label) + "</text>\n";
    }
    svg += "<text transform=\"translate(18," + num(top + kPanelHeight / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + escape(panel.y_label) + "</text>\n";

    for (std::size_t i = 0; i < panel.series.size(); ++i) {
      const auto& s = panel.series[i];
      const char* colour = kColours[i % kColours.size()];
      std::string points;
      std::size_t drawn = 0;
      double last_x = 0.0, last_y = 0.0;
      for (std::size_t j = 0; j < std::min(s.x.size(), s.y.size()); ++j) {
        if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j])) continue;
        last_x = px(s.x[j]);
        last_y = py(s.y[j]);
        points += num(last_x) + "," + num(last_y) + " ";
        ++drawn;
      }
      if (drawn == 1) {
        svg += "<circle cx=\"" + num(last_x) + "\" cy=\"" + num(last_y) + "\" r=\"3\" fill=\"" + colour + "\"/>\n";
      } else if (drawn > 1) {
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" +
               points + "\"/>\n";
      }
      const double ly = top + 16 + 16 * i;
      svg += "<line x1=\"" + num(kLeft + plot_w + 10) + "\" x2=\"" + num(kLeft + plot_w + 30) + "\" y1=\"" +
             num(ly - 4) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>";
      svg += "<text x=\"" + num(kLeft + plot_w + 36) + "\" y=\"" + num(ly) + "\">" + escape(s.label) + "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace tli::app
