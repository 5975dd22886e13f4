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

#ifndef SEIROPT_SVG_HPP_
#define SEIROPT_SVG_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace seiropt::svg {

using Point = std::pair<double, double>;

// Minimal text-only SVG builder; no external renderer involved.
class Document {
 public:
  Document(double width, double height);

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double stroke_width = 1.0, const std::string& dash = "");
  void polyline(const std::vector<Point>& points, const std::string& stroke,
                double stroke_width = 1.5, const std::string& dash = "");
  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none");
  void circle(double cx, double cy, double radius, const std::string& fill);
  void text(double x, double y, const std::string& content, double size = 12.0,
            const std::string& anchor = "start", const std::string& fill = "#222222");

  std::string str() const;
  void write(const std::filesystem::path& path) const;

  double width() const { return width_; }
  double height() const { return height_; }

 private:
  double width_;
  double height_;
  std::string body_;
};

// Maps data coordinates onto a pixel viewport (y axis flipped).
class LinearScale {
 public:
  LinearScale(double data_min, double data_max, double pixel_min, double pixel_max);
  double operator()(double v) const;

 private:
  double data_min_, data_max_, pixel_min_, pixel_max_;
};

struct Series {
  std::string label;
  std::string color;
  std::vector<double> values;  // sampled at x = 1..values.size()
  std::string dash;
};

// Shared line-chart scaffolding: axes, ticks, legend, one polyline per
// series. step=true draws staircase lines (action timelines).
void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool step = false);

struct BarEntry {
  std::string label;
  double average = 0.0;
  double minimum = 0.0;
  double maximum = 0.0;
};

// Bar chart of per-method averages with min/max whiskers.
void write_bar_chart(const std::filesystem::path& path, const std::string& title,
                     const std::string& y_label, const std::vector<BarEntry>& entries);

}  // namespace seiropt::svg

#endif  // SEIROPT_SVG_HPP_
