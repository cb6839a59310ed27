#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace knncut::detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string escape(const std::string& s) {
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

/// Minimal SVG writer. Shapes take pixel coordinates; `View` maps world boxes to pixels.
class Svg {
 public:
  Svg(double width, double height) : width_(width), height_(height) {}

  void circle(double x, double y, double r, const std::string& fill, double opacity = 1.0) {
    body_ += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r) + "\" fill=\"" + fill + "\"";
    if (opacity < 1.0) body_ += " fill-opacity=\"" + fmt(opacity) + "\"";
    body_ += "/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
            const std::string& dash = "") {
    body_ += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" + fmt(y2) +
             "\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none",
            double opacity = 1.0) {
    body_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
             "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"";
    if (opacity < 1.0) body_ += " fill-opacity=\"" + fmt(opacity) + "\"";
    body_ += "/>\n";
  }
  void ring(double x, double y, double r, const std::string& stroke) {
    body_ += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r) + "\" fill=\"none\" stroke=\"" +
             stroke + "\"/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width = 1.5) {
    body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(width) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ += (i ? " " : "") + fmt(pts[i].first) + "," + fmt(pts[i].second);
    body_ += "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 12, const std::string& anchor = "start") {
    body_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-family=\"sans-serif\" font-size=\"" +
             std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + escape(s) + "</text>\n";
  }

  [[nodiscard]] std::string str() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_) + "\" height=\"" + fmt(height_) +
           "\" viewBox=\"0 0 " + fmt(width_) + " " + fmt(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
           body_ + "</svg>\n";
  }

 private:
  double width_, height_;
  std::string body_;
};

/// Affine map from a world rectangle to a pixel rectangle, y pointing up, equal aspect
/// unless `stretch`. With `log_x` the x axis is logarithmic.
struct View {
  double x0, x1, y0, y1;   // world
  double px, py, pw, ph;   // pixels
  bool log_x = false;

  [[nodiscard]] double sx(double x) const {
    if (log_x) return px + pw * (std::log(x) - std::log(x0)) / (std::log(x1) - std::log(x0));
    return px + pw * (x - x0) / (x1 - x0);
  }
  [[nodiscard]] double sy(double y) const { return py + ph - ph * (y - y0) / (y1 - y0); }
  [[nodiscard]] double scale() const { return pw / (x1 - x0); }
};

inline const char* palette(int i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  return colors[i % 6];
}

}  // namespace knncut::detail
