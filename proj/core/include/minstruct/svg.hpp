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

#ifndef MINSTRUCT_SVG_HPP_
#define MINSTRUCT_SVG_HPP_

#include <string>
#include <utility>
#include <vector>

namespace minstruct {

struct ChartSeries {
  std::string label;
  std::string color;  // any SVG color string
  std::vector<std::pair<double, double>> points;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = true;
  bool log_y = true;
  int width = 720;
  int height = 480;
};

// Static SVG 1.1 line chart. Output bytes depend only on the arguments.
// Points that cannot be placed (non-finite, or nonpositive on a log axis)
// break the polyline, leaving visible gaps.
std::string render_chart_svg(const std::vector<ChartSeries>& series,
                             const ChartOptions& options);

}  // namespace minstruct

#endif  // MINSTRUCT_SVG_HPP_
