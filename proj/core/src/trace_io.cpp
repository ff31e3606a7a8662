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

#include "minstruct/trace_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace minstruct {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s.empty()) {
    throw std::invalid_argument("parse_double: empty field");
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw std::invalid_argument("parse_double: trailing characters in '" + s +
                                "'");
  }
  return v;
}

std::string trace_kind_name(TraceKind kind) {
  switch (kind) {
    case TraceKind::kUpperImproved:
      return "UpperImproved";
    case TraceKind::kLowerImproved:
      return "LowerImproved";
    case TraceKind::kPhaseAEnd:
      return "PhaseAEnd";
    case TraceKind::kPhaseBEnd:
      return "PhaseBEnd";
    case TraceKind::kExit:
      return "Exit";
  }
  throw std::logic_error("trace_kind_name: unknown kind");
}

TraceKind trace_kind_from_name(const std::string& name) {
  if (name == "UpperImproved") return TraceKind::kUpperImproved;
  if (name == "LowerImproved") return TraceKind::kLowerImproved;
  if (name == "PhaseAEnd") return TraceKind::kPhaseAEnd;
  if (name == "PhaseBEnd") return TraceKind::kPhaseBEnd;
  if (name == "Exit") return TraceKind::kExit;
  throw std::invalid_argument("unknown trace kind '" + name + "'");
}

void write_trace_csv(std::ostream& out, const std::string& run_id,
                     const std::string& algo, std::uint64_t seed,
                     const std::vector<TraceEvent>& trace) {
  out << kTraceCsvHeader << "\n";
  for (const TraceEvent& e : trace) {
    out << run_id << ',' << algo << ',' << seed << ',' << e.k << ','
        << format_double(e.t_wall_s) << ',' << format_double(e.t_model) << ','
        << format_double(e.f_hat) << ',' << format_double(e.f_check) << ','
        << trace_kind_name(e.kind) << "\n";
  }
}

void save_trace_csv(const std::string& path, const std::string& run_id,
                    const std::string& algo, std::uint64_t seed,
                    const std::vector<TraceEvent>& trace) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  write_trace_csv(out, run_id, algo, seed, trace);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::vector<TraceRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == kTraceCsvHeader) continue;
    }
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 9) {
      throw std::invalid_argument("trace csv: expected 9 fields, got " +
                                  std::to_string(f.size()));
    }
    TraceRow row;
    row.run_id = f[0];
    row.algo = f[1];
    row.seed = std::strtoull(f[2].c_str(), nullptr, 10);
    row.event.k = std::atoi(f[3].c_str());
    row.event.t_wall_s = parse_double(f[4]);
    row.event.t_model = parse_double(f[5]);
    row.event.f_hat = parse_double(f[6]);
    row.event.f_check = parse_double(f[7]);
    row.event.kind = trace_kind_from_name(f[8]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TraceRow> load_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file: " + path);
  }
  return read_trace_csv(in);
}

}  // namespace minstruct
