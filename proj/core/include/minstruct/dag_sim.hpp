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
//
// Abstract solver simulator. Replaces real subproblem solves with a sampled
// instance: a DAG over pieces (an edge means the full solve of the source
// jumps strictly downhill onto the target), per-piece optimum values
// consistent with that DAG, sampled tight-constraint sets, and a synthetic
// lower-bound formula. Used to study solve-cost accounting across regimes
// without paying for real oracle calls.

#ifndef MINSTRUCT_DAG_SIM_HPP_
#define MINSTRUCT_DAG_SIM_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "minstruct/oracle.hpp"
#include "minstruct/rng.hpp"

namespace minstruct {

struct SimParams {
  int n = 0;
  int m = 0;
  double sigma_act = 1e-2;   // |C(i)| = max(1, round(sigma_act * m))
  double sigma_deg = 2e-3;   // edge target = round(sigma_deg * n(n-1)/2)
  double upsilon = 0.0;      // constraint-index weighting exponent
  double theta = 10.0;       // mean downhill gap along an edge
  double theta_bar = 0.0;    // mean lower-bound slack per piece
  double value_cap = 10.0;   // upper bound on all sampled values
  double strict_margin = 1e-7;
};

struct AbstractInstance {
  SimParams params;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> out_neighbors;
  std::vector<double> piece_value;       // optimum value of each piece
  std::vector<double> full_value_at_min; // full objective at that minimizer
  std::vector<std::vector<int>> active_sets;  // sorted constraint indices
  std::vector<double> bound_slack;       // per-piece slack scale draws

  int n() const { return params.n; }
  int m() const { return params.m; }
};

// Uniform draws from the remaining ordered pairs; a draw that would close a
// cycle is discarded permanently. Stops at round(sigma_deg * n(n-1)/2) edges
// or on pool exhaustion (which can only happen at an acyclic tournament).
std::vector<std::pair<int, int>> gen_dag(int n, double sigma_deg, Rng* rng);

// Sequential weighted sampling without replacement; index j is drawn with
// weight (j+1)^upsilon among the remaining indices.
std::vector<std::vector<int>> sample_active_sets(int n, int m,
                                                 double sigma_act,
                                                 double upsilon, Rng* rng);

// Values consistent with the DAG, found by maximizing their sum subject to
// every edge dropping by at least its sampled gap, strict improvement over
// the source's full value, equality at sinks, and the cap. Infeasibility
// triggers a gap redraw (a bounded number of times).
void assign_values(const std::vector<std::pair<int, int>>& edges, int n,
                   const SimParams& params, Rng* rng,
                   std::vector<double>* piece_value,
                   std::vector<double>* full_value_at_min);

AbstractInstance make_instance(const SimParams& params, Rng* rng);

// Count of edges whose endpoint values violate the downhill requirements.
int check_dag_assumption(const AbstractInstance& inst, double tol);

// Synthetic relaxation bound for an unvisited piece given a subset of size
// subset_size containing overlap of the piece's active set.
double sim_lower_bound(const AbstractInstance& inst, int piece,
                       int overlap, int subset_size);

struct SimTolerances {
  double eps = 1e-3;
  double eps_rel = 5e-2;
  double value_tol = 1e-6;
};

struct SimReport {
  double f_hat = 0.0;
  double f_check = 0.0;
  int iterations = 0;
  int visited_count = 0;
  bool certified = false;
  double gamma = 0.0;  // accumulated model time
  // (visited size after the descent phase, subset size when pricing).
  std::vector<std::pair<int, int>> history;
};

// The solver loop on the abstraction; every full solve costs time(m), every
// pricing of an unvisited piece costs time(subset size).
SimReport sim_ulo(const AbstractInstance& inst, const CostModel& cost,
                  int start_piece, const SimTolerances& tol, Rng* rng);

struct SimEnumeration {
  double f_star = 0.0;
  double gamma = 0.0;
};

SimEnumeration sim_enumeration(const AbstractInstance& inst,
                               const CostModel& cost);

double gamma_enumeration(int k, const CostModel& cost, int m);

// Size of the union of all per-piece active sets.
int union_active_size(const AbstractInstance& inst);

struct SimGridConfig {
  int n = 100;
  int m = 2000;
  double sigma_act = 1e-2;
  double theta = 10.0;
  double value_cap = 10.0;
  double strict_margin = 1e-7;
  std::vector<double> theta_bar_values;
  std::vector<double> upsilon_values;
  std::vector<double> sigma_deg_values;
  int instances = 5;
  int starts = 20;
  std::uint64_t seed = 0;
  CostModel cost;  // exponent used as given; fixed_cost < 0 requests the
                   // matched rule fixed = m^r / 999
  SimTolerances tol;
};

struct SimGridRow {
  double theta_bar = 0.0;
  double upsilon = 0.0;
  double sigma_deg = 0.0;
  int instance_id = 0;
  int start_piece = 0;
  int iterations = 0;
  double gamma_ulo = 0.0;
  double gamma_es_n = 0.0;
  double cost_ratio = 0.0;
  int union_active = 0;
};

std::vector<SimGridRow> run_grid(const SimGridConfig& config);

inline constexpr char kGridCsvHeader[] =
    "theta_bar,upsilon_param,sigma_deg,instance_id,start_piece,K,gamma_ulo,"
    "gamma_es_n,upsilon_ratio,union_active_size";

void write_grid_csv(std::ostream& out, const std::vector<SimGridRow>& rows);

struct SimCellSummary {
  double theta_bar = 0.0;
  double upsilon = 0.0;
  double sigma_deg = 0.0;
  int runs = 0;
  double mean_ratio = 0.0;
  double mean_log10_ratio = 0.0;
  double mean_union_active = 0.0;
  double mean_iterations = 0.0;
};

std::vector<SimCellSummary> summarize_grid(const std::vector<SimGridRow>& rows);

void write_grid_summary_csv(std::ostream& out,
                            const std::vector<SimCellSummary>& cells);

}  // namespace minstruct

#endif  // MINSTRUCT_DAG_SIM_HPP_
