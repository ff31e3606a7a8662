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
// Dense two-phase primal simplex. Self-contained on purpose: the solvers
// above it need byte-reproducible optima and active sets across runs and
// platforms, which rules out seeding by external solver defaults.

#ifndef MINSTRUCT_SIMPLEX_HPP_
#define MINSTRUCT_SIMPLEX_HPP_

#include <cstddef>
#include <vector>

namespace minstruct {

// minimize objective . x + objective_offset
// subject to ineq_a x <= ineq_b, eq_a x == eq_b, lo <= x <= hi.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  double objective_offset = 0.0;
  std::vector<std::vector<double>> ineq_a;
  std::vector<double> ineq_b;
  std::vector<std::vector<double>> eq_a;
  std::vector<double> eq_b;
  std::vector<double> lo;
  std::vector<double> hi;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-7;
  // Iteration cap is max_iterations_factor * (tableau rows + columns),
  // shared across both phases.
  std::size_t max_iterations_factor = 50;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

// Deterministic: identical inputs produce identical pivots, hence identical
// bytes in x. Bland's entering/leaving rule makes cycling impossible.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {});

}  // namespace minstruct

#endif  // MINSTRUCT_SIMPLEX_HPP_
