// Copyright 2026 The seiropt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seiropt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace seiropt::svg {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Round tick label; trims trailing zeros.
std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 52.0;

}  // namespace

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                    double stroke_width, const std::string& dash) {
  body_ += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + escape(stroke) + "\" stroke-width=\"" + num(stroke_width) +
           "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + escape(dash) + "\"";
  body_ += " />\n";
}

void Document::polyline(const std::vector<Point>& points, const std::string& stroke,
                        double stroke_width, const std::string& dash) {
  if (points.empty()) throw std::invalid_argument("polyline needs at least one point");
  body_ += "  <polyline fill=\"none\" stroke=\"" + escape(stroke) + "\" stroke-width=\"" +
           num(stroke_width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + escape(dash) + "\"";
  body_ += " points=\"";
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k > 0) body_ += ' ';
    body_ += num(points[k].first) + "," + num(points[k].second);
  }
  body_ += "\" />\n";
}

void Document::rect(double x, double y, double w, double h, const std::string& fill,
                    const std::string& stroke) {
  body_ += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"" + escape(fill) + "\" stroke=\"" +
           escape(stroke) + "\" />\n";
}

void Document::circle(double cx, double cy, double radius, const std::string& fill) {
  body_ += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(radius) +
           "\" fill=\"" + escape(fill) + "\" />\n";
}

void Document::text(double x, double y, const std::string& content, double size,
                    const std::string& anchor, const std::string& fill) {
  body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
           "\" font-family=\"sans-serif\" text-anchor=\"" + escape(anchor) + "\" fill=\"" +
           escape(fill) + "\">" + escape(content) + "</text>\n";
}

std::string Document::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
         num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
         "\" fill=\"white\" stroke=\"none\" />\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

void Document::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open SVG for writing: " + path.string());
  out << str();
  if (!out) throw std::runtime_error("failed writing SVG: " + path.string());
}

LinearScale::LinearScale(double data_min, double data_max, double pixel_min, double pixel_max)
    : data_min_(data_min), data_max_(data_max), pixel_min_(pixel_min), pixel_max_(pixel_max) {
  if (!(data_max_ > data_min_)) data_max_ = data_min_ + 1.0;  // degenerate flat series
}

double LinearScale::operator()(double v) const {
  const double t = (v - data_min_) / (data_max_ - data_min_);
  return pixel_min_ + t * (pixel_max_ - pixel_min_);
}

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool step) {
  if (series.empty()) throw std::invalid_argument("line chart needs at least one series");
  std::size_t n = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Series& s : series) {
    if (s.values.empty()) throw std::invalid_argument("series '" + s.label + "' is empty");
    n = std::max(n, s.values.size());
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo > 0.0 && lo < 0.66 * hi) lo = 0.0;  // anchor small-positive charts at zero

  Document doc(900, 420);
  const double plot_w = doc.width() - kMarginLeft - kMarginRight;
  const double plot_h = doc.height() - kMarginTop - kMarginBottom;
  const LinearScale sx(1.0, static_cast<double>(n), kMarginLeft, kMarginLeft + plot_w);
  const LinearScale sy(lo, hi, kMarginTop + plot_h, kMarginTop);

  doc.text(doc.width() / 2.0, kMarginTop - 14.0, title, 15.0, "middle");

  // gridlines + y ticks
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    const double y = sy(v);
    doc.line(kMarginLeft, y, kMarginLeft + plot_w, y, "#dddddd", 1.0);
    doc.text(kMarginLeft - 8.0, y + 4.0, tick_label(v), 11.0, "end");
  }
  // x ticks
  for (int t = 0; t <= 4; ++t) {
    const double v = 1.0 + (static_cast<double>(n) - 1.0) * t / 4.0;
    const double x = sx(v);
    doc.line(x, kMarginTop + plot_h, x, kMarginTop + plot_h + 4.0, "#222222", 1.0);
    doc.text(x, kMarginTop + plot_h + 18.0, tick_label(std::round(v)), 11.0, "middle");
  }
  // axes
  doc.line(kMarginLeft, kMarginTop, kMarginLeft, kMarginTop + plot_h, "#222222", 1.5);
  doc.line(kMarginLeft, kMarginTop + plot_h, kMarginLeft + plot_w, kMarginTop + plot_h, "#222222",
           1.5);
  doc.text(kMarginLeft + plot_w / 2.0, doc.height() - 12.0, x_label, 12.0, "middle");
  doc.text(18.0, kMarginTop - 14.0, y_label, 12.0);

  double legend_y = kMarginTop + 10.0;
  for (const Series& s : series) {
    std::vector<Point> pts;
    pts.reserve(step ? s.values.size() * 2 : s.values.size());
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      const double x = sx(static_cast<double>(k + 1));
      const double y = sy(s.values[k]);
      if (step && k > 0) pts.emplace_back(x, pts.back().second);
      pts.emplace_back(x, y);
    }
    doc.polyline(pts, s.color, 1.8, s.dash);
    doc.line(kMarginLeft + plot_w + 12.0, legend_y, kMarginLeft + plot_w + 40.0, legend_y, s.color,
             2.5, s.dash);
    doc.text(kMarginLeft + plot_w + 46.0, legend_y + 4.0, s.label, 11.0);
    legend_y += 18.0;
  }
  doc.write(path);
}

void write_bar_chart(const std::filesystem::path& path, const std::string& title,
                     const std::string& y_label, const std::vector<BarEntry>& entries) {
  if (entries.empty()) throw std::invalid_argument("bar chart needs at least one entry");
  double lo = 0.0;
  double hi = -std::numeric_limits<double>::infinity();
  for (const BarEntry& e : entries) {
    lo = std::min({lo, e.minimum, e.average});
    hi = std::max({hi, e.maximum, e.average});
  }
  if (!(hi > lo)) hi = lo + 1.0;

  Document doc(640, 420);
  const double plot_w = doc.width() - kMarginLeft - 40.0;
  const double plot_h = doc.height() - kMarginTop - kMarginBottom;
  const LinearScale sy(lo, hi, kMarginTop + plot_h, kMarginTop);

  doc.text(doc.width() / 2.0, kMarginTop - 14.0, title, 15.0, "middle");
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    doc.line(kMarginLeft, sy(v), kMarginLeft + plot_w, sy(v), "#dddddd", 1.0);
    doc.text(kMarginLeft - 8.0, sy(v) + 4.0, tick_label(v), 11.0, "end");
  }
  doc.text(18.0, kMarginTop - 14.0, y_label, 12.0);

  const double slot = plot_w / static_cast<double>(entries.size());
  const double bar_w = slot * 0.5;
  const double zero_y = sy(std::max(lo, std::min(0.0, hi)));
  static const char* kColors[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44"};
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const BarEntry& e = entries[k];
    const double cx = kMarginLeft + slot * (static_cast<double>(k) + 0.5);
    const double top = sy(std::max(e.average, 0.0));
    const double bottom = sy(std::min(e.average, 0.0));
    doc.rect(cx - bar_w / 2.0, top, bar_w, std::max(bottom - top, 1.0), kColors[k % 4]);
    doc.line(cx, sy(e.minimum), cx, sy(e.maximum), "#222222", 1.5);
    doc.line(cx - 6.0, sy(e.minimum), cx + 6.0, sy(e.minimum), "#222222", 1.5);
    doc.line(cx - 6.0, sy(e.maximum), cx + 6.0, sy(e.maximum), "#222222", 1.5);
    doc.text(cx, kMarginTop + plot_h + 18.0, e.label, 12.0, "middle");
    doc.text(cx, top - 6.0, tick_label(e.average), 10.0, "middle");
  }
  doc.line(kMarginLeft, zero_y, kMarginLeft + plot_w, zero_y, "#222222", 1.0);
  doc.write(path);
}

}  // namespace seiropt::svg
