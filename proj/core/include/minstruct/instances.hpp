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

#ifndef MINSTRUCT_INSTANCES_HPP_
#define MINSTRUCT_INSTANCES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "minstruct/dag_sim.hpp"
#include "minstruct/problem.hpp"
#include "minstruct/rng.hpp"

namespace minstruct {

// Pessimistic-optimistic piecewise-linear investment program. Pieces are
// market scenarios, constraints are investment budget rows softened by a
// penalized violation allowance eta.
struct PoplpParams {
  int n = 5;              // market scenarios (pieces)
  int m = 8;              // investment conditions (constraints)
  int deviation = 1;      // scenario deviation scale, 1 or 10
  double zeta = 1.0;      // budget tightness, > 0
  int p = 4;              // assets
  double budget = 10.0;   // investment units R, > 0
  double omega = 0.5;     // pessimism weight in [0, 1)
  double penalty = 5e4;   // eta penalty C_pen
  std::uint64_t seed = 0;
};

// One scenario deviation draw: 0 with probability 3/5, each of -2,-1,1,2
// with probability 1/10.
int poplp_delta(Rng* rng);

// Deterministic in params.seed. Variables are (u_1..u_p, eta); the solved
// minimum is the negation of the original maximization objective.
MSProblem gen_poplp(const PoplpParams& params);

// One-dimensional four-piece toy with a nonconvex (concave) quadratic
// constraint; only the reference oracle can solve it.
MSProblem toy_illustration();

// Tikhonov-regularized piecewise-linear program in (u, eta), six pieces and
// six constraints, minimum -25/8 at u = -3/2.
MSProblem toy_tikhonov();

// Nine-piece hand-built abstraction with one constraint per piece and zero
// bound slack; its unique global value is 2.
AbstractInstance table4_instance();

// Difference of two max-affine families over a polyhedral domain.
struct AffineFamily {
  std::vector<std::vector<double>> beta;  // one coefficient vector per row
  std::vector<double> gamma;              // matching offsets
};

// Epigraph lift of min over domain of max(outer) - max(inner): dimension
// grows by one (eta last), inner rows become pieces, outer rows become
// constraints.
MSProblem dcpl_to_ms(const AffineFamily& outer, const AffineFamily& inner,
                     const BasicSet& domain, const std::string& name);

}  // namespace minstruct

#endif  // MINSTRUCT_INSTANCES_HPP_
