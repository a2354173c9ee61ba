// Copyright 2026 The policysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "policysim/report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "policysim/common/error.hpp"

namespace policysim {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 50;
const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const char* colour(std::size_t i) { return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))]; }

struct Range {
  double lo = 0, hi = 1;

  void fit(const std::vector<double>& v) {
    for (double x : v) {
      if (!std::isfinite(x)) continue;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  void pad() {
    if (hi == lo) {
      lo -= 1;
      hi += 1;
    }
  }
};

Range data_range(const std::vector<Series>& series, bool use_x) {
  Range r{INFINITY, -INFINITY};
  for (const auto& s : series) r.fit(use_x ? s.x : s.y);
  if (!std::isfinite(r.lo)) r = Range{0, 1};
  r.pad();
  return r;
}

class Canvas {
 public:
  Canvas(double w, double h) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" fill=\"" << fill << "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& fill) {
    out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
         << "\" fill-opacity=\"0.6\"/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out_ << num(x) << ',' << num(y) << ' ';
    out_ << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, const char* anchor = "start", double rotate = 0) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << '"';
    if (rotate != 0) out_ << " transform=\"rotate(" << num(rotate) << ' ' << num(x) << ' ' << num(y) << ")\"";
    out_ << '>' << esc(s) << "</text>\n";
  }

  void save(const std::filesystem::path& path) {
    out_ << "</svg>\n";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw RuntimeError("cannot write " + path.string());
    f << out_.str();
  }

 private:
  std::ostringstream out_;
};

struct Frame {
  Range x, y;
  double left = kLeft, top = kTop, width = kWidth - kLeft - kRight, height = kHeight - kTop - kBottom;

  double px(double v) const { return left + (v - x.lo) / (x.hi - x.lo) * width; }
  double py(double v) const { return top + height - (v - y.lo) / (y.hi - y.lo) * height; }
};

void draw_axes(Canvas& c, const Frame& f, const Axes& a, bool x_ticks) {
  c.text(kWidth / 2, 22, a.title, "middle");
  c.line(f.left, f.top + f.height, f.left + f.width, f.top + f.height, "black");
  c.line(f.left, f.top, f.left, f.top + f.height, "black");
  for (int i = 0; i <= 4; ++i) {
    const double v = f.y.lo + (f.y.hi - f.y.lo) * i / 4;
    c.line(f.left - 4, f.py(v), f.left, f.py(v), "black");
    c.text(f.left - 6, f.py(v) + 4, num(v), "end");
    if (x_ticks) {
      const double u = f.x.lo + (f.x.hi - f.x.lo) * i / 4;
      c.line(f.px(u), f.top + f.height, f.px(u), f.top + f.height + 4, "black");
      c.text(f.px(u), f.top + f.height + 16, num(u), "middle");
    }
  }
  c.text(f.left + f.width / 2, kHeight - 10, a.x_label, "middle");
  c.text(16, f.top + f.height / 2, a.y_label, "middle", -90);
}

void draw_legend(Canvas& c, const std::vector<Series>& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 16 * i;
    c.rect(kWidth - kRight + 12, y, 10, 10, colour(i));
    c.text(kWidth - kRight + 28, y + 9, series[i].label);
  }
}

}  // namespace

void write_line_chart(const std::filesystem::path& path, const Axes& axes, const std::vector<Series>& series) {
  Canvas c(kWidth, kHeight);
  Frame f;
  f.x = data_range(series, true);
  f.y = data_range(series, false);
  draw_axes(c, f, axes, true);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      pts.emplace_back(f.px(s.x[k]), f.py(s.y[k]));
    }
    if (s.markers) {
      for (const auto& [x, y] : pts) c.circle(x, y, 2.5, colour(i));
    } else {
      c.polyline(pts, colour(i));
    }
  }
  draw_legend(c, series);
  c.save(path);
}

void write_bar_chart(const std::filesystem::path& path, const Axes& axes, const std::vector<std::string>& categories,
                     const std::vector<Series>& series) {
  Canvas c(kWidth, kHeight);
  Frame f;
  f.x = Range{0, static_cast<double>(std::max<std::size_t>(categories.size(), 1))};
  f.y = data_range(series, false);
  f.y.lo = std::min(f.y.lo, 0.0);
  draw_axes(c, f, axes, false);
  const double group = f.width / f.x.hi;
  const double bar = group * 0.8 / std::max<std::size_t>(series.size(), 1);
  const std::size_t label_every = std::max<std::size_t>(1, categories.size() / 12);
  for (std::size_t k = 0; k < categories.size(); ++k) {
    if (k % label_every == 0) c.text(f.px(k + 0.5), f.top + f.height + 16, categories[k], "middle");
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (k >= series[i].y.size()) continue;
      const double v = series[i].y[k];
      const double y0 = f.py(std::max(v, 0.0));
      const double y1 = f.py(std::min(v, 0.0));
      c.rect(f.left + group * k + group * 0.1 + bar * i, y0, bar, y1 - y0, colour(i));
    }
  }
  draw_legend(c, series);
  c.save(path);
}

void write_strip_panels(const std::filesystem::path& path, const std::string& title, const std::vector<Panel>& panels) {
  const int cols = 4;
  const int rows = std::max<int>(1, (static_cast<int>(panels.size()) + cols - 1) / cols);
  const double pw = 200, ph = 70;
  Canvas c(cols * pw + 20, rows * ph + 50);
  c.text((cols * pw + 20) / 2, 22, title, "middle");
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& p = panels[i];
    const double x0 = 10 + (i % cols) * pw + 10;
    const double y0 = 40 + (i / cols) * ph;
    const double w = pw - 20;
    c.text(x0, y0 + 12, p.title);
    const double axis_y = y0 + 40;
    c.line(x0, axis_y, x0 + w, axis_y, "black");
    c.text(x0, axis_y + 14, num(p.lower));
    c.text(x0 + w, axis_y + 14, num(p.upper), "end");
    const double span = p.upper > p.lower ? p.upper - p.lower : 1.0;
    for (double v : p.values) {
      const double x = x0 + std::clamp((v - p.lower) / span, 0.0, 1.0) * w;
      c.line(x, axis_y - 14, x, axis_y, colour(0));
    }
  }
  c.save(path);
}

}  // namespace policysim
