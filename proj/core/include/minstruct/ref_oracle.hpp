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
// Brute-force reference oracle. Solves the same subproblems as the LP oracle
// by refined grid search after shrinking the search space: equality rows fix
// dependent coordinates, and a coordinate that every expression is monotone
// in (the epigraph pattern) is replaced by its implied lower envelope. Exact
// candidate points (constraint roots, bound crossings) are injected so the
// low-dimensional model problems resolve exactly rather than to grid
// resolution. Not fast; exists to check the LP oracle and to cover pieces
// the LP oracle cannot represent.

#ifndef MINSTRUCT_REF_ORACLE_HPP_
#define MINSTRUCT_REF_ORACLE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "minstruct/oracle.hpp"

namespace minstruct {

struct GridSpec {
  // Axis resolution for one or two free dimensions; the coarser value kicks
  // in at three free dimensions to keep the lattice tractable.
  std::size_t points_per_axis = 2001;
  std::size_t points_per_axis_3d = 61;
  std::size_t rounds = 6;
  double shrink = 10.0;
  // Grid feasibility tolerance = feasibility_scale * widest axis range.
  double feasibility_scale = 1e-9;
  // A constraint counts as active when |c_j(x_star)| <= active_tol.
  double active_tol = 1e-6;
};

class RefOracle : public Oracle {
 public:
  RefOracle(const MSProblem& problem, CostModel cost, GridSpec grid = {});

 protected:
  OracleResult solve_uncached(int piece, const IndexSet& S) override;

 private:
  GridSpec grid_;
  // Precomputed equality elimination (reduced row echelon form of eq rows):
  // x[dep_coord_[k]] = dep_offset_[k] + sum_f dep_coeff_[k][f] * x[free_f].
  std::vector<std::size_t> dep_coords_;
  std::vector<std::vector<double>> dep_coeff_;  // indexed over all coords
  std::vector<double> dep_offset_;
  bool eq_inconsistent_ = false;
  std::vector<double> range_lo_, range_hi_;  // tightened per-coord bounds
};

// One LP-vs-reference comparison on a subproblem both oracles can solve.
struct CrossValidationReport {
  int piece = 0;
  std::vector<int> subset;
  SolveStatus lp_status = SolveStatus::kOptimal;
  SolveStatus ref_status = SolveStatus::kOptimal;
  double lp_value = 0.0;
  double ref_value = 0.0;
  double abs_diff = 0.0;
  bool agree = false;  // same status and, when optimal, values within tol
};

CrossValidationReport cross_validate(const MSProblem& problem, int piece,
                                     const IndexSet& S, double value_tol);

}  // namespace minstruct

#endif  // MINSTRUCT_REF_ORACLE_HPP_
