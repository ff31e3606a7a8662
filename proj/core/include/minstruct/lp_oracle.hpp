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

#ifndef MINSTRUCT_LP_ORACLE_HPP_
#define MINSTRUCT_LP_ORACLE_HPP_

#include "minstruct/oracle.hpp"
#include "minstruct/simplex.hpp"

namespace minstruct {

struct LpOracleOptions {
  LpOptions lp;
  // A constraint counts as active when |c_j(x_star)| <= active_tol.
  double active_tol = 1e-6;
};

// Exact subproblem oracle for problems whose pieces and constraints are all
// LP-representable: each query is lowered to its epigraph form and handed to
// the built-in simplex.
class LpOracle : public Oracle {
 public:
  LpOracle(const MSProblem& problem, CostModel cost,
           LpOracleOptions options = {});

  static bool representable(const MSProblem& problem);

  // The LP a query lowers to; exposed for tests.
  LinearProgram build_lp(int piece, const IndexSet& S) const;

 protected:
  OracleResult solve_uncached(int piece, const IndexSet& S) override;

 private:
  LpOracleOptions options_;
};

}  // namespace minstruct

#endif  // MINSTRUCT_LP_ORACLE_HPP_
