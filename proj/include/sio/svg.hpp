#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sio/types.hpp"

namespace sio {

/// Minimal SVG writer for spectra plots: one polyline path per labelled
/// curve plus a text legend.
class SvgPlot {
 public:
  struct Path {
    std::vector<Complex> points;
    std::string label;
    std::string color = "#1f6feb";
  };

  void add_path(std::vector<Complex> points, std::string label,
                std::string color = "#1f6feb") {
    paths_.push_back({std::move(points), std::move(label), std::move(color)});
  }

  void add_legend_line(std::string text) { legend_.push_back(std::move(text)); }

  void write(const std::string& path, int width = 640, int height = 640) const {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& p : paths_)
      for (Complex z : p.points) {
        lo_x = std::min(lo_x, z.real());
        hi_x = std::max(hi_x, z.real());
        lo_y = std::min(lo_y, z.imag());
        hi_y = std::max(hi_y, z.imag());
      }
    if (lo_x > hi_x) {
      lo_x = lo_y = -1.0;
      hi_x = hi_y = 1.0;
    }
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    if (span <= 0.0) span = 1.0;
    double margin = 0.08 * span;
    lo_x -= margin;
    lo_y -= margin;
    span += 2.0 * margin;
    double scale = static_cast<double>(std::min(width, height)) / span;
    auto px = [&](Complex z) {
      return std::pair<double, double>{(z.real() - lo_x) * scale,
                                       height - (z.imag() - lo_y) * scale};
    };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& p : paths_) {
      if (p.points.empty()) continue;
      if (p.points.size() == 1) {
        auto [x, y] = px(p.points.front());
        out << "<circle cx=\"" << x << "\" cy=\"" << y
            << "\" r=\"3\" fill=\"" << p.color << "\"><title>" << p.label
            << "</title></circle>\n";
        continue;
      }
      out << "<polyline fill=\"none\" stroke=\"" << p.color
          << "\" stroke-width=\"1\" points=\"";
      for (Complex z : p.points) {
        auto [x, y] = px(z);
        out << x << "," << y << " ";
      }
      out << "\"><title>" << p.label << "</title></polyline>\n";
    }
    int ty = 16;
    for (const auto& line : legend_) {
      out << "<text x=\"8\" y=\"" << ty
          << "\" font-family=\"monospace\" font-size=\"12\">" << line
          << "</text>\n";
      ty += 16;
    }
    out << "</svg>\n";
    std::ofstream f(path);
    require(f.good(), "svg output file not writable");
    f << out.str();
  }

 private:
  std::vector<Path> paths_;
  std::vector<std::string> legend_;
};

}  // namespace sio
