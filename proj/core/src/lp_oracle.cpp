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

#include "minstruct/lp_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace minstruct {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

LpOracle::LpOracle(const MSProblem& problem, CostModel cost,
                   LpOracleOptions options)
    : Oracle(problem, cost), options_(options) {
  if (!representable(problem)) {
    throw UnsupportedExpression(
        "LpOracle: problem contains a non-LP-representable expression");
  }
}

bool LpOracle::representable(const MSProblem& problem) {
  for (const ConvexExpr& e : problem.pieces) {
    if (!classify(e).lp_representable) return false;
  }
  for (const ConvexExpr& e : problem.constraints) {
    if (!classify(e).lp_representable) return false;
  }
  return true;
}

LinearProgram LpOracle::build_lp(int piece, const IndexSet& S) const {
  const MSProblem& p = problem();
  const std::size_t d = p.d;

  EpigraphForm obj = lower_to_epigraph(p.pieces[piece], d);
  std::size_t width = d + obj.num_aux;

  LinearProgram lp;
  const auto add_row = [&lp, &width](const AffineForm& row) {
    std::vector<double> a = row.coeffs;
    a.resize(width, 0.0);
    lp.ineq_a.push_back(std::move(a));
    lp.ineq_b.push_back(-row.offset);
  };
  for (const AffineForm& r : obj.rows) add_row(r);

  // Each selected constraint contributes its own epigraph block plus the
  // root row value <= 0, with auxiliaries appended after the ones so far.
  for (int j : S) {
    EpigraphForm con = lower_to_epigraph(p.constraints[j], d);
    const std::size_t shift = width - d;
    const auto widen = [&](const AffineForm& row) {
      AffineForm out;
      out.offset = row.offset;
      out.coeffs.assign(width + con.num_aux, 0.0);
      for (std::size_t k = 0; k < d; ++k) out.coeffs[k] = row.coeffs[k];
      for (std::size_t k = d; k < row.coeffs.size(); ++k) {
        out.coeffs[k + shift] = row.coeffs[k];
      }
      return out;
    };
    std::vector<AffineForm> rows;
    rows.reserve(con.rows.size() + 1);
    for (const AffineForm& r : con.rows) rows.push_back(widen(r));
    rows.push_back(widen(con.value));
    width += con.num_aux;
    for (const AffineForm& r : rows) add_row(r);
  }

  lp.num_vars = width;
  for (auto& row : lp.ineq_a) row.resize(width, 0.0);

  lp.objective = obj.value.coeffs;
  lp.objective.resize(width, 0.0);
  lp.objective_offset = obj.value.offset;

  for (const auto& row : p.basic.ineq_a) {
    std::vector<double> a = row;
    a.resize(width, 0.0);
    lp.ineq_a.push_back(std::move(a));
  }
  lp.ineq_b.insert(lp.ineq_b.end(), p.basic.ineq_b.begin(),
                   p.basic.ineq_b.end());
  for (const auto& row : p.basic.eq_a) {
    std::vector<double> a = row;
    a.resize(width, 0.0);
    lp.eq_a.push_back(std::move(a));
  }
  lp.eq_b = p.basic.eq_b;

  lp.lo = p.basic.lo;
  lp.hi = p.basic.hi;
  lp.lo.resize(width, -kInf);
  lp.hi.resize(width, kInf);
  return lp;
}

OracleResult LpOracle::solve_uncached(int piece, const IndexSet& S) {
  const LinearProgram lp = build_lp(piece, S);
  const LpSolution sol = solve_lp(lp, options_.lp);
  OracleResult out;
  switch (sol.status) {
    case LpStatus::kOptimal: {
      out.status = SolveStatus::kOptimal;
      out.value = sol.objective;
      out.x_star.assign(sol.x.begin(), sol.x.begin() + problem().d);
      out.active = active_constraints(problem(), out.x_star, S,
                                      options_.active_tol);
      return out;
    }
    case LpStatus::kInfeasible:
      out.status = SolveStatus::kInfeasible;
      out.value = kInf;
      return out;
    case LpStatus::kUnbounded:
      out.status = SolveStatus::kUnbounded;
      out.value = -kInf;
      return out;
    case LpStatus::kIterationLimit:
      break;
  }
  throw std::runtime_error(
      "LpOracle: simplex iteration cap exceeded on piece " +
      std::to_string(piece));
}

}  // namespace minstruct
