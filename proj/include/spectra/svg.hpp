#pragma once

#include <string>
#include <vector>

#include "spectra/geometry.hpp"

namespace spectra::svg {

// Closed-outline rendering of a 2D shape (polygon or profile domain),
// auto-scaled into a square canvas with a light grid and caption.
std::string render_shape(const geom::Shape& shape, const std::string& caption,
                         int canvas = 480);

// Simple log-log friendly polyline chart for (x, y) series.
struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_chart(const std::vector<Series>& series,
                         const std::string& caption, int canvas = 560,
                         bool log_x = false);

}  // namespace spectra::svg
