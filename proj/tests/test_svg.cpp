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

#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "minstruct/svg.hpp"

using namespace minstruct;

namespace {

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("svg: deterministic bytes and well-formed envelope") {
  std::vector<ChartSeries> series(2);
  series[0] = {"ulo", "#1b9e77", {{0.1, 50.0}, {1.0, 5.0}, {10.0, 0.5}}};
  series[1] = {"es", "#d95f02", {{0.2, 80.0}, {2.0, 8.0}}};
  ChartOptions options;
  options.title = "primal gap";
  options.x_label = "model time";
  options.y_label = "gap";
  const std::string a = render_chart_svg(series, options);
  const std::string b = render_chart_svg(series, options);
  CHECK(a == b);
  const bool has_open_tag = a.find("<svg") != std::string::npos;
  CHECK(has_open_tag);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(a.find("primal gap") != std::string::npos);
  CHECK(a.find("model time") != std::string::npos);
  CHECK(a.find("ulo") != std::string::npos);
  CHECK(a.find("es") != std::string::npos);
  CHECK(a.find("#1b9e77") != std::string::npos);
  CHECK(a.find("width=\"720\"") != std::string::npos);
  CHECK(a.find("height=\"480\"") != std::string::npos);
}

TEST_CASE("svg: labels are xml-escaped") {
  std::vector<ChartSeries> series(1);
  series[0] = {"a<b & c>d", "black", {{1.0, 1.0}, {2.0, 2.0}}};
  ChartOptions options;
  options.title = "t&t";
  const std::string svg = render_chart_svg(series, options);
  CHECK(svg.find("a&lt;b &amp; c&gt;d") != std::string::npos);
  CHECK(svg.find("t&amp;t") != std::string::npos);
  CHECK(svg.find("a<b") == std::string::npos);
}

TEST_CASE("svg: log axes break polylines at nonpositive points") {
  ChartOptions options;  // log-log by default
  std::vector<ChartSeries> one(1);
  one[0] = {"s", "blue", {{1.0, 1.0}, {2.0, 4.0}, {3.0, 9.0}}};
  const std::string contiguous = render_chart_svg(one, options);
  const std::size_t base = count_occurrences(contiguous, "<polyline");

  std::vector<ChartSeries> split(1);
  split[0] = {"s",
              "blue",
              {{1.0, 1.0}, {2.0, -4.0}, {3.0, 9.0}, {4.0, 16.0}}};
  const std::string broken = render_chart_svg(split, options);
  // The nonpositive middle point splits one polyline into two.
  CHECK(count_occurrences(broken, "<polyline") == base + 1);

  std::vector<ChartSeries> nan_split(1);
  nan_split[0] = {"s",
                  "blue",
                  {{1.0, 1.0},
                   {2.0, std::numeric_limits<double>::quiet_NaN()},
                   {3.0, 9.0},
                   {4.0, 16.0}}};
  CHECK(count_occurrences(render_chart_svg(nan_split, options),
                          "<polyline") == base + 1);
}

TEST_CASE("svg: linear axes accept nonpositive values") {
  ChartOptions options;
  options.log_x = false;
  options.log_y = false;
  std::vector<ChartSeries> series(1);
  series[0] = {"s", "red", {{-2.0, -1.0}, {0.0, 0.0}, {2.0, 1.0}}};
  const std::string svg = render_chart_svg(series, options);
  CHECK(count_occurrences(svg, "<polyline") >= 1);
}

TEST_CASE("svg: fallback when nothing can be drawn") {
  ChartOptions options;  // log axes
  std::vector<ChartSeries> series(1);
  series[0] = {"s", "red", {{-1.0, 2.0}, {-2.0, 3.0}}};
  const std::string svg = render_chart_svg(series, options);
  CHECK(svg.find("no drawable points") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Empty input degrades the same way.
  CHECK(render_chart_svg({}, options).find("no drawable points") !=
        std::string::npos);
}
