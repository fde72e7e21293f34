#pragma once

#include <string>
#include <vector>

namespace nhtb {

/// Minimal SVG scatter/step/heat renderer for the figure recipes.
class SvgPlot {
 public:
  SvgPlot(double width, double height);

  void set_limits(double xmin, double xmax, double ymin, double ymax);
  void scatter(const std::vector<double>& x, const std::vector<double>& y,
               const std::string& color, double radius = 1.0);
  void line(const std::vector<double>& x, const std::vector<double>& y, const std::string& color,
            double stroke_width = 1.0, bool dashed = false);
  void step(const std::vector<double>& x, const std::vector<double>& y, const std::string& color,
            double stroke_width = 1.0, bool dashed = false);
  void cell(double x0, double x1, double y0, double y1, const std::string& color);
  void axes(const std::string& x_label, const std::string& y_label);

  void save(const std::string& path) const;

 private:
  double to_px_x(double x) const;
  double to_px_y(double y) const;

  double width_, height_;
  double xmin_ = 0.0, xmax_ = 1.0, ymin_ = 0.0, ymax_ = 1.0;
  std::vector<std::string> body_;
};

}  // namespace nhtb
