// Copyright 2026 The minstruct Authors
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

#include "minstruct/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace minstruct {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape_text(const std::string& s) {
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
      default:
        out += c;
    }
  }
  return out;
}

std::string tick_label(double v, bool log_axis) {
  char buf[48];
  if (log_axis) {
    std::snprintf(buf, sizeof(buf), "1e%d",
                  static_cast<int>(std::lround(std::log10(v))));
  } else {
    std::snprintf(buf, sizeof(buf), "%g", v);
  }
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log_scale = false;

  bool placeable(double v) const {
    return std::isfinite(v) && (!log_scale || v > 0.0);
  }
  double fraction(double v) const {
    double a = lo;
    double b = hi;
    double t = v;
    if (log_scale) {
      a = std::log10(a);
      b = std::log10(b);
      t = std::log10(t);
    }
    if (b <= a) return 0.5;
    return (t - a) / (b - a);
  }
};

Axis fit_axis(const std::vector<ChartSeries>& series, bool take_x,
              bool log_scale) {
  Axis axis;
  axis.log_scale = log_scale;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      const double v = take_x ? x : y;
      if (!axis.placeable(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) {
    lo = log_scale ? 0.1 : 0.0;
    hi = log_scale ? 10.0 : 1.0;
  }
  if (lo == hi) {
    if (log_scale) {
      lo /= 10.0;
      hi *= 10.0;
    } else {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

std::vector<double> axis_ticks(const Axis& axis) {
  std::vector<double> ticks;
  if (axis.log_scale) {
    const int lo = static_cast<int>(std::ceil(std::log10(axis.lo) - 1e-9));
    const int hi = static_cast<int>(std::floor(std::log10(axis.hi) + 1e-9));
    for (int e = lo; e <= hi; ++e) ticks.push_back(std::pow(10.0, e));
    if (ticks.empty()) ticks = {axis.lo, axis.hi};
  } else {
    const int count = 5;
    for (int i = 0; i <= count; ++i) {
      ticks.push_back(axis.lo + (axis.hi - axis.lo) * i / count);
    }
  }
  return ticks;
}

}  // namespace

std::string render_chart_svg(const std::vector<ChartSeries>& series,
                             const ChartOptions& options) {
  const double w = options.width;
  const double h = options.height;
  const double ml = 70.0, mr = 160.0, mt = 40.0, mb = 50.0;
  const double plot_w = w - ml - mr;
  const double plot_h = h - mt - mb;

  const Axis ax = fit_axis(series, true, options.log_x);
  const Axis ay = fit_axis(series, false, options.log_y);
  const auto sx = [&](double v) { return ml + ax.fraction(v) * plot_w; };
  const auto sy = [&](double v) {
    return mt + (1.0 - ay.fraction(v)) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\""
      << options.width << "\" height=\"" << options.height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\""
      << options.height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << px(w / 2.0) << "\" y=\"24\" font-size=\"16\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape_text(options.title) << "</text>\n";
  out << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\""
      << px(plot_w) << "\" height=\"" << px(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : axis_ticks(ax)) {
    const double x = sx(t);
    out << "<line x1=\"" << px(x) << "\" y1=\"" << px(mt + plot_h)
        << "\" x2=\"" << px(x) << "\" y2=\"" << px(mt + plot_h + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << px(mt + plot_h + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">"
        << tick_label(t, ax.log_scale) << "</text>\n";
  }
  for (double t : axis_ticks(ay)) {
    const double y = sy(t);
    out << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(y) << "\" x2=\""
        << px(ml) << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" "
           "font-family=\"sans-serif\">"
        << tick_label(t, ay.log_scale) << "</text>\n";
  }
  out << "<text x=\"" << px(ml + plot_w / 2.0) << "\" y=\""
      << px(h - 12.0)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">"
      << escape_text(options.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << px(mt + plot_h / 2.0)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
      << px(mt + plot_h / 2.0) << ")\">" << escape_text(options.y_label)
      << "</text>\n";

  std::size_t drawable = 0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const ChartSeries& sr = series[s];
    std::string polyline;
    bool open = false;
    const auto flush = [&] {
      if (open) {
        out << "<polyline fill=\"none\" stroke=\"" << sr.color
            << "\" stroke-width=\"1.5\" points=\"" << polyline << "\"/>\n";
        polyline.clear();
        open = false;
      }
    };
    for (const auto& [x, y] : sr.points) {
      if (!ax.placeable(x) || !ay.placeable(y)) {
        flush();
        continue;
      }
      if (open) polyline += ' ';
      polyline += px(sx(x)) + ',' + px(sy(y));
      open = true;
      ++drawable;
    }
    flush();
    const double ly = mt + 16.0 + 18.0 * s;
    out << "<line x1=\"" << px(w - mr + 12) << "\" y1=\"" << px(ly - 4)
        << "\" x2=\"" << px(w - mr + 40) << "\" y2=\"" << px(ly - 4)
        << "\" stroke=\"" << sr.color << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << px(w - mr + 46) << "\" y=\"" << px(ly)
        << "\" font-size=\"12\" font-family=\"sans-serif\">"
        << escape_text(sr.label) << "</text>\n";
  }
  if (drawable == 0) {
    out << "<text x=\"" << px(ml + plot_w / 2.0) << "\" y=\""
        << px(mt + plot_h / 2.0)
        << "\" font-size=\"13\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">no drawable points</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace minstruct
