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

#ifndef MINSTRUCT_BENCH_HPP_
#define MINSTRUCT_BENCH_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "minstruct/oracle.hpp"
#include "minstruct/problem.hpp"
#include "minstruct/solvers.hpp"

namespace minstruct {

struct BenchPlan {
  std::string problem_file;
  std::vector<std::string> algos = {"ulo", "es", "ram"};
  int n_rep = 15;
  double time_limit_s = 240.0;
  int es_permutations = 1000;
  std::uint64_t seed = 0;
  std::vector<double> timestamps;  // empty: geometric defaults
  std::vector<int> starts;         // shared per-repetition start pieces;
                                   // empty: drawn from seed
  std::string oracle = "auto";     // lp | ref | auto
  double rho = 1e-3;
  double eps = 1e-3;
  double eps_rel = 5e-2;
  int ram_budget = 0;  // <= 0: one restart per piece
};

// count points spaced geometrically over [lo, hi], endpoints included.
std::vector<double> geometric_timestamps(double lo, double hi, int count);

BenchPlan load_bench_plan(const std::string& path);

// Oracle factory shared by the benchmark runner and the command line.
// kind "auto" picks the linear-programming oracle whenever every expression
// is representable, otherwise the reference oracle. A negative
// cost.fixed_cost requests the matched rule fixed = m^r / 999.
std::unique_ptr<Oracle> make_oracle(const MSProblem& p,
                                    const std::string& kind,
                                    CostModel cost);

struct StepPoint {
  double t = 0.0;
  double f_hat = 0.0;
};

// Resampled enumeration traces: for each sampled permutation of the pieces,
// the cumulative solve time paired with the running minimum value.
std::vector<std::vector<StepPoint>> es_resample(
    const std::vector<double>& times, const std::vector<double>& values,
    std::uint64_t seed, int count);

struct AggregateRow {
  double tau = 0.0;
  double mean_f_hat = 0.0;
  double mean_f_check = 0.0;
  int coverage = 0;  // traces with at least one event at or before tau
};

// Per timestamp, the mean over traces of the last event at or before it.
// A trace with no such event is excluded from that timestamp's mean.
std::vector<AggregateRow> aggregate(
    const std::vector<std::vector<TraceEvent>>& traces,
    const std::vector<double>& timestamps);

struct BenchResult {
  std::string problem_name;
  bool have_f_star = false;
  double f_star = 0.0;  // valid only when have_f_star
};

// Runs every algorithm for n_rep repetitions with fresh oracles, writing
// trace CSVs, enumeration per-piece samples, and summary.json to out_dir.
BenchResult run_bench(const BenchPlan& plan, const std::string& out_dir);

struct ReportOptions {
  bool auto_f_star = true;  // read f_star from summary.json when present
  bool have_f_star = false;
  double f_star = 0.0;
};

// Aggregated summary CSVs plus SVG gap charts from a bench output
// directory. Throws std::invalid_argument when the directory holds no
// traces.
void write_report(const std::string& in_dir, const ReportOptions& options,
                  const std::string& out_dir);

}  // namespace minstruct

#endif  // MINSTRUCT_BENCH_HPP_
