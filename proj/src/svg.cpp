#include "nhtb/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nhtb/model.hpp"

namespace nhtb {

namespace {
constexpr double kMarginLeft = 50.0;
constexpr double kMarginRight = 15.0;
constexpr double kMarginTop = 15.0;
constexpr double kMarginBottom = 40.0;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

SvgPlot::SvgPlot(double width, double height) : width_(width), height_(height) {}

void SvgPlot::set_limits(double xmin, double xmax, double ymin, double ymax) {
  xmin_ = xmin;
  xmax_ = xmax;
  ymin_ = ymin;
  ymax_ = ymax;
  if (xmax_ <= xmin_) xmax_ = xmin_ + 1.0;
  if (ymax_ <= ymin_) ymax_ = ymin_ + 1.0;
}

double SvgPlot::to_px_x(double x) const {
  return kMarginLeft + (x - xmin_) / (xmax_ - xmin_) * (width_ - kMarginLeft - kMarginRight);
}

double SvgPlot::to_px_y(double y) const {
  return height_ - kMarginBottom -
         (y - ymin_) / (ymax_ - ymin_) * (height_ - kMarginTop - kMarginBottom);
}

void SvgPlot::scatter(const std::vector<double>& x, const std::vector<double>& y,
                      const std::string& color, double radius) {
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    body_.push_back("<circle cx=\"" + num(to_px_x(x[i])) + "\" cy=\"" + num(to_px_y(y[i])) +
                    "\" r=\"" + num(radius) + "\" fill=\"" + color + "\"/>");
  }
}

void SvgPlot::line(const std::vector<double>& x, const std::vector<double>& y,
                   const std::string& color, double stroke_width, bool dashed) {
  if (x.size() < 2) return;
  std::string d = "M";
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    d += " " + num(to_px_x(x[i])) + " " + num(to_px_y(y[i]));
    if (i == 0) d += " L";
  }
  body_.push_back("<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                  num(stroke_width) + "\"" +
                  (dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>");
}

void SvgPlot::step(const std::vector<double>& x, const std::vector<double>& y,
                   const std::string& color, double stroke_width, bool dashed) {
  if (x.size() < 2) return;
  std::vector<double> sx, sy;
  sx.push_back(x[0]);
  sy.push_back(y[0]);
  for (size_t i = 1; i < x.size() && i < y.size(); ++i) {
    const double mid = 0.5 * (x[i - 1] + x[i]);
    sx.push_back(mid);
    sy.push_back(y[i - 1]);
    sx.push_back(mid);
    sy.push_back(y[i]);
    sx.push_back(x[i]);
    sy.push_back(y[i]);
  }
  line(sx, sy, color, stroke_width, dashed);
}

void SvgPlot::cell(double x0, double x1, double y0, double y1, const std::string& color) {
  const double px0 = to_px_x(x0), px1 = to_px_x(x1);
  const double py0 = to_px_y(y1), py1 = to_px_y(y0);
  body_.push_back("<rect x=\"" + num(px0) + "\" y=\"" + num(py0) + "\" width=\"" +
                  num(px1 - px0) + "\" height=\"" + num(py1 - py0) + "\" fill=\"" + color +
                  "\"/>");
}

void SvgPlot::axes(const std::string& x_label, const std::string& y_label) {
  const double x0 = kMarginLeft, x1 = width_ - kMarginRight;
  const double y0 = height_ - kMarginBottom, y1 = kMarginTop;
  body_.push_back("<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) +
                  "\" height=\"" + num(y0 - y1) + "\" fill=\"none\" stroke=\"black\"/>");
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin_ + (xmax_ - xmin_) * i / 4.0;
    const double fy = ymin_ + (ymax_ - ymin_) * i / 4.0;
    body_.push_back("<text x=\"" + num(to_px_x(fx)) + "\" y=\"" + num(y0 + 16) +
                    "\" font-size=\"10\" text-anchor=\"middle\">" + num(fx) + "</text>");
    body_.push_back("<text x=\"" + num(x0 - 6) + "\" y=\"" + num(to_px_y(fy) + 3) +
                    "\" font-size=\"10\" text-anchor=\"end\">" + num(fy) + "</text>");
  }
  body_.push_back("<text x=\"" + num(0.5 * (x0 + x1)) + "\" y=\"" + num(height_ - 6) +
                  "\" font-size=\"12\" text-anchor=\"middle\">" + x_label + "</text>");
  body_.push_back("<text x=\"12\" y=\"" + num(0.5 * (y0 + y1)) +
                  "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 12 " +
                  num(0.5 * (y0 + y1)) + ")\">" + y_label + "</text>");
}

void SvgPlot::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
      << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& el : body_) out << el << "\n";
  out << "</svg>\n";
}

}  // namespace nhtb
