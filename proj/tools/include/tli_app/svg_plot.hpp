#pragma once

#include <string>
#include <vector>

namespace tli::app {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string y_label;
  std::vector<Series> series;
};

struct Figure {
  std::string title;
  std::string x_label;
  std::vector<Panel> panels;  ///< stacked vertically, shared x axis
};

/// Standalone SVG document. Non-finite points are skipped; a series with a
/// single point is drawn as a marker.
std::string render_svg(const Figure& figure);

}  // namespace tli::app
