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

#ifndef MINSTRUCT_TRACE_IO_HPP_
#define MINSTRUCT_TRACE_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "minstruct/solvers.hpp"

namespace minstruct {

// Shortest decimal form that parses back to the same double ("inf"/"-inf"
// for infinities). Every numeric column this project writes uses this.
std::string format_double(double v);
double parse_double(const std::string& s);

std::string trace_kind_name(TraceKind kind);
TraceKind trace_kind_from_name(const std::string& name);

inline constexpr char kTraceCsvHeader[] =
    "run_id,algo,seed,k,t_wall_s,t_model_units,F_hat,F_check,kind";

struct TraceRow {
  std::string run_id;
  std::string algo;
  std::uint64_t seed = 0;
  TraceEvent event;
};

void write_trace_csv(std::ostream& out, const std::string& run_id,
                     const std::string& algo, std::uint64_t seed,
                     const std::vector<TraceEvent>& trace);
void save_trace_csv(const std::string& path, const std::string& run_id,
                    const std::string& algo, std::uint64_t seed,
                    const std::vector<TraceEvent>& trace);

std::vector<TraceRow> read_trace_csv(std::istream& in);
std::vector<TraceRow> load_trace_csv(const std::string& path);

}  // namespace minstruct

#endif  // MINSTRUCT_TRACE_IO_HPP_
