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

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "minstruct/trace_io.hpp"
#include "test_support.hpp"

using namespace minstruct;

TEST_CASE("format_double: shortest round-trip form") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-3.125) == "-3.125");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  // Round trip is exact for arbitrary doubles.
  for (double v : {1.0 / 3.0, std::sqrt(2.0), 6.02214076e23, 5e-324,
                   -123456.789, 1e308}) {
    CHECK(parse_double(format_double(v)) == v);
  }
}

TEST_CASE("parse_double: infinities and plain numbers") {
  CHECK(parse_double("inf") == std::numeric_limits<double>::infinity());
  CHECK(parse_double("-inf") == -std::numeric_limits<double>::infinity());
  CHECK(parse_double("2.5") == 2.5);
  CHECK(parse_double("-0.125") == -0.125);
}

TEST_CASE("trace kinds: names round-trip and unknowns throw") {
  const TraceKind kinds[] = {TraceKind::kUpperImproved,
                             TraceKind::kLowerImproved, TraceKind::kPhaseAEnd,
                             TraceKind::kPhaseBEnd, TraceKind::kExit};
  const char* names[] = {"UpperImproved", "LowerImproved", "PhaseAEnd",
                         "PhaseBEnd", "Exit"};
  for (int i = 0; i < 5; ++i) {
    CHECK(trace_kind_name(kinds[i]) == names[i]);
    CHECK(trace_kind_from_name(names[i]) == kinds[i]);
  }
  CHECK_THROWS_AS(trace_kind_from_name("Bogus"), std::invalid_argument);
}

namespace {

std::vector<TraceEvent> sample_trace() {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<TraceEvent> t;
  t.push_back({0.001, 2.0, 1, 5.5, -inf, TraceKind::kUpperImproved});
  t.push_back({0.002, 4.0, 1, 5.5, -inf, TraceKind::kPhaseAEnd});
  t.push_back({0.25, 10.5, 2, -3.125, -4.0, TraceKind::kLowerImproved});
  t.push_back({0.5, 12.25, 2, -3.125, -3.125, TraceKind::kExit});
  return t;
}

}  // namespace

TEST_CASE("trace csv: stream round trip preserves every field") {
  const std::vector<TraceEvent> trace = sample_trace();
  std::ostringstream out;
  write_trace_csv(out, "run-7", "ulo", 42, trace);
  const std::string text = out.str();
  CHECK(text.rfind(kTraceCsvHeader, 0) == 0);

  std::istringstream in(text);
  const std::vector<TraceRow> rows = read_trace_csv(in);
  REQUIRE(rows.size() == trace.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].run_id == "run-7");
    CHECK(rows[i].algo == "ulo");
    CHECK(rows[i].seed == 42);
    CHECK(rows[i].event.t_wall_s == trace[i].t_wall_s);
    CHECK(rows[i].event.t_model == trace[i].t_model);
    CHECK(rows[i].event.k == trace[i].k);
    CHECK(rows[i].event.f_hat == trace[i].f_hat);
    CHECK(rows[i].event.f_check == trace[i].f_check);
    CHECK(rows[i].event.kind == trace[i].kind);
  }
}

TEST_CASE("trace csv: file round trip") {
  minstruct_test::TempDir dir;
  const std::string path = dir.file("trace.csv");
  const std::vector<TraceEvent> trace = sample_trace();
  save_trace_csv(path, "r", "es", 9, trace);
  const std::vector<TraceRow> rows = load_trace_csv(path);
  REQUIRE(rows.size() == trace.size());
  CHECK(rows[0].algo == "es");
  CHECK(rows[0].seed == 9);
  CHECK(rows.back().event.f_check == -3.125);
  CHECK(rows.back().event.kind == TraceKind::kExit);
}

TEST_CASE("trace csv: infinities survive the text form") {
  std::ostringstream out;
  write_trace_csv(out, "r", "ulo", 0, sample_trace());
  std::istringstream in(out.str());
  const std::vector<TraceRow> rows = read_trace_csv(in);
  CHECK(rows[0].event.f_check == -std::numeric_limits<double>::infinity());
}
