#pragma once

#include <string>
#include <vector>

namespace antijam {

// One plotted line; stddev (optional, same length as y) draws error bars.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> stddev;
};

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Data range padded by 5% on each side (a degenerate span gets a small
// absolute pad).
AxisRange axis_range(double min_value, double max_value);

// Standalone static SVG line chart with legend, axis ticks, and error
// bars. Requires nonempty series with strictly increasing x; throws
// std::domain_error otherwise.
void emit_svg(const std::vector<Series>& series, const std::string& x_label,
              const std::string& y_label, const std::string& title,
              const std::string& path);

std::string svg_to_string(const std::vector<Series>& series,
                          const std::string& x_label,
                          const std::string& y_label,
                          const std::string& title);

}  // namespace antijam
