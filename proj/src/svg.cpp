#include "antijam/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace antijam {

AxisRange axis_range(double min_value, double max_value) {
  if (!(min_value <= max_value)) {
    throw std::domain_error("axis_range: min must not exceed max");
  }
  double pad = 0.05 * (max_value - min_value);
  if (pad == 0.0) pad = std::max(0.5, 0.05 * std::abs(min_value));
  return {min_value - pad, max_value + pad};
}

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = kWidth - 180.0;
constexpr double kTop = 46.0;
constexpr double kBottom = kHeight - 58.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Tick spacing rounded to a 1/2/5 decade so labels come out clean.
double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double factor = 10.0;
  if (norm <= 1.0) factor = 1.0;
  else if (norm <= 2.0) factor = 2.0;
  else if (norm <= 5.0) factor = 5.0;
  return factor * mag;
}

void check_series(const std::vector<Series>& series) {
  if (series.empty()) throw std::domain_error("svg: no series to plot");
  for (const auto& s : series) {
    if (s.x.empty()) throw std::domain_error("svg: series '" + s.name + "' is empty");
    if (s.x.size() != s.y.size()) {
      throw std::domain_error("svg: series '" + s.name + "' x/y length mismatch");
    }
    if (!s.stddev.empty() && s.stddev.size() != s.y.size()) {
      throw std::domain_error("svg: series '" + s.name + "' stddev length mismatch");
    }
    for (size_t i = 1; i < s.x.size(); ++i) {
      if (!(s.x[i] > s.x[i - 1])) {
        throw std::domain_error("svg: series '" + s.name + "' x must be strictly increasing");
      }
    }
    for (double v : s.x) {
      if (!std::isfinite(v)) throw std::domain_error("svg: non-finite x value");
    }
    for (double v : s.y) {
      if (!std::isfinite(v)) throw std::domain_error("svg: non-finite y value");
    }
  }
}

}  // namespace

std::string svg_to_string(const std::vector<Series>& series,
                          const std::string& x_label,
                          const std::string& y_label,
                          const std::string& title) {
  check_series(series);

  double xmin = series[0].x.front(), xmax = series[0].x.back();
  double ymin = series[0].y[0], ymax = series[0].y[0];
  for (const auto& s : series) {
    xmin = std::min(xmin, s.x.front());
    xmax = std::max(xmax, s.x.back());
    for (size_t i = 0; i < s.y.size(); ++i) {
      const double sd = s.stddev.empty() ? 0.0 : s.stddev[i];
      ymin = std::min(ymin, s.y[i] - sd);
      ymax = std::max(ymax, s.y[i] + sd);
    }
  }
  const AxisRange xr = axis_range(xmin, xmax);
  const AxisRange yr = axis_range(ymin, ymax);

  const auto sx = [&](double v) {
    return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft);
  };
  const auto sy = [&](double v) {
    return kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) +
         "\" height=\"" + px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + " " +
         px(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" +
         px(kHeight) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + px((kLeft + kRight) / 2) +
         "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">" + escape_xml(title) + "</text>\n";

  // Grid and ticks.
  const double xstep = nice_step(xr.hi - xr.lo, 6);
  const double ystep = nice_step(yr.hi - yr.lo, 6);
  for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi + 1e-12 * xstep;
       v += xstep) {
    const double X = sx(v);
    out += "<line x1=\"" + px(X) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(X) +
           "\" y2=\"" + px(kBottom) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + px(X) + "\" y=\"" + px(kBottom + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           escape_xml(tick_label(v)) + "</text>\n";
  }
  for (double v = std::ceil(yr.lo / ystep) * ystep; v <= yr.hi + 1e-12 * ystep;
       v += ystep) {
    const double Y = sy(v);
    out += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(Y) + "\" x2=\"" +
           px(kRight) + "\" y2=\"" + px(Y) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(Y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
           escape_xml(tick_label(v)) + "</text>\n";
  }

  // Axes.
  out += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kBottom) + "\" x2=\"" +
         px(kRight) + "\" y2=\"" + px(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" +
         px(kLeft) + "\" y2=\"" + px(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out += "<text x=\"" + px((kLeft + kRight) / 2) + "\" y=\"" +
         px(kHeight - 16) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
         escape_xml(x_label) + "</text>\n";
  out += "<text x=\"20\" y=\"" + px((kTop + kBottom) / 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 20 " + px((kTop + kBottom) / 2) + ")\">" +
         escape_xml(y_label) + "</text>\n";

  // Series.
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (!s.stddev.empty()) {
      for (size_t i = 0; i < s.y.size(); ++i) {
        if (s.stddev[i] <= 0.0) continue;
        const double X = sx(s.x[i]);
        const double Y1 = sy(s.y[i] - s.stddev[i]);
        const double Y2 = sy(s.y[i] + s.stddev[i]);
        out += "<line x1=\"" + px(X) + "\" y1=\"" + px(Y1) + "\" x2=\"" + px(X) +
               "\" y2=\"" + px(Y2) + "\" stroke=\"" + color +
               "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
        out += "<line x1=\"" + px(X - 3) + "\" y1=\"" + px(Y1) + "\" x2=\"" +
               px(X + 3) + "\" y2=\"" + px(Y1) + "\" stroke=\"" + color +
               "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
        out += "<line x1=\"" + px(X - 3) + "\" y1=\"" + px(Y2) + "\" x2=\"" +
               px(X + 3) + "\" y2=\"" + px(Y2) + "\" stroke=\"" + color +
               "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
      }
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.8\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (i > 0) out += ' ';
      out += px(sx(s.x[i])) + "," + px(sy(s.y[i]));
    }
    out += "\"/>\n";
    if (s.x.size() == 1) {
      out += "<circle cx=\"" + px(sx(s.x[0])) + "\" cy=\"" + px(sy(s.y[0])) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
  }

  // Legend.
  const double lx = kRight + 14.0;
  double ly = kTop + 8.0;
  for (size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" +
           px(lx + 22) + "\" y2=\"" + px(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + px(lx + 28) + "\" y=\"" + px(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(series[si].name) + "</text>\n";
    ly += 20.0;
  }

  out += "</svg>\n";
  return out;
}

void emit_svg(const std::vector<Series>& series, const std::string& x_label,
              const std::string& y_label, const std::string& title,
              const std::string& path) {
  const std::string text = svg_to_string(series, x_label, y_label, title);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("emit_svg: cannot open " + path);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw std::runtime_error("emit_svg: write failed for " + path);
}

}  // namespace antijam
