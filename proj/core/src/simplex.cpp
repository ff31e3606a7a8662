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

#include "minstruct/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minstruct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bounded variables are reduced to nonnegative columns:
//   kShift:  x = lo + x',           x' >= 0 (extra range row when hi finite)
//   kMirror: x = hi - x',           x' >= 0 (lo = -inf, hi finite)
//   kSplit:  x = x'_pos - x'_neg,   both >= 0 (free variable)
enum class VarKind { kShift, kMirror, kSplit };

struct VarMap {
  VarKind kind;
  std::size_t col = 0;
  std::size_t col_neg = 0;  // kSplit only
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), width_(cols + 1), data_(rows * width_, 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * width_ + c];
  }
  double& rhs(std::size_t r) { return data_[r * width_ + cols_]; }
  double rhs(std::size_t r) const { return data_[r * width_ + cols_]; }
  double* row(std::size_t r) { return data_.data() + r * width_; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t width() const { return width_; }

  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<double>* cost) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* rr = row(r);
      const double f = rr[pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) rr[j] -= f * prow[j];
      rr[pc] = 0.0;
    }
    const double f = (*cost)[pc];
    if (f != 0.0) {
      for (std::size_t j = 0; j < width_; ++j) (*cost)[j] -= f * prow[j];
      (*cost)[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Swap-delete a row (used for redundant rows after phase 1).
  void drop_row(std::size_t r) {
    if (r != rows_ - 1) {
      std::swap_ranges(row(r), row(r) + width_, row(rows_ - 1));
      std::swap(basis_[r], basis_[rows_ - 1]);
    }
    --rows_;
    data_.resize(rows_ * width_);
    basis_.resize(rows_);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class LoopResult { kOptimal, kUnbounded, kIterationLimit };

// One simplex phase. Columns at index >= col_limit are excluded from
// entering (phase 2 bans artificial columns this way). Entering column:
// most negative reduced cost, lowest index on ties. After a run of
// degenerate pivots the rule switches to Bland's (first negative cost)
// until the objective moves again, which rules out cycling while keeping
// the pivot order deterministic.
LoopResult simplex_loop(Tableau* tab, std::vector<double>* cost,
                        std::size_t col_limit, const LpOptions& opts,
                        std::size_t cap, std::size_t* iters) {
  std::size_t stalled = 0;
  const std::size_t stall_limit = tab->rows() + 16;
  for (;;) {
    if (*iters >= cap) return LoopResult::kIterationLimit;
    std::size_t enter = col_limit;
    if (stalled > stall_limit) {
      for (std::size_t j = 0; j < col_limit; ++j) {
        if ((*cost)[j] < -opts.pivot_tol) {
          enter = j;
          break;
        }
      }
    } else {
      double best = -opts.pivot_tol;
      for (std::size_t j = 0; j < col_limit; ++j) {
        if ((*cost)[j] < best) {
          best = (*cost)[j];
          enter = j;
        }
      }
    }
    if (enter == col_limit) return LoopResult::kOptimal;
    std::size_t leave = tab->rows();
    double best_ratio = kInf;
    for (std::size_t r = 0; r < tab->rows(); ++r) {
      const double a = tab->at(r, enter);
      if (a <= opts.pivot_tol) continue;
      const double ratio = std::max(tab->rhs(r), 0.0) / a;
      if (ratio < best_ratio ||
          (ratio == best_ratio && leave != tab->rows() &&
           tab->basis()[r] < tab->basis()[leave])) {
        best_ratio = ratio;
        leave = r;
      }
    }
    if (leave == tab->rows()) return LoopResult::kUnbounded;
    stalled = best_ratio <= opts.pivot_tol ? stalled + 1 : 0;
    tab->pivot(leave, enter, cost);
    ++*iters;
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts) {
  const std::size_t nv = lp.num_vars;
  if (lp.objective.size() != nv || lp.lo.size() != nv || lp.hi.size() != nv) {
    throw std::invalid_argument("solve_lp: vector sizes do not match num_vars");
  }
  if (lp.ineq_a.size() != lp.ineq_b.size() ||
      lp.eq_a.size() != lp.eq_b.size()) {
    throw std::invalid_argument("solve_lp: row/rhs count mismatch");
  }
  for (const auto& r : lp.ineq_a) {
    if (r.size() != nv) {
      throw std::invalid_argument("solve_lp: inequality row size mismatch");
    }
  }
  for (const auto& r : lp.eq_a) {
    if (r.size() != nv) {
      throw std::invalid_argument("solve_lp: equality row size mismatch");
    }
  }

  // Variable transformation to nonnegative columns.
  std::vector<VarMap> vmap(nv);
  std::size_t ns = 0;
  std::vector<std::size_t> range_vars;  // vars needing an x' <= hi - lo row
  for (std::size_t v = 0; v < nv; ++v) {
    if (lp.lo[v] > lp.hi[v]) {
      LpSolution sol;
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    if (lp.lo[v] > -kInf) {
      vmap[v] = {VarKind::kShift, ns++, 0};
      if (lp.hi[v] < kInf) range_vars.push_back(v);
    } else if (lp.hi[v] < kInf) {
      vmap[v] = {VarKind::kMirror, ns++, 0};
    } else {
      vmap[v].kind = VarKind::kSplit;
      vmap[v].col = ns++;
      vmap[v].col_neg = ns++;
    }
  }

  const std::size_t n_ineq = lp.ineq_a.size() + range_vars.size();
  const std::size_t n_eq = lp.eq_a.size();
  const std::size_t nrows = n_ineq + n_eq;
  const std::size_t slack_start = ns;
  const std::size_t art_start = ns + n_ineq;
  // Worst case: every row needs an artificial.
  const std::size_t ncols_max = art_start + nrows;

  Tableau tab(nrows, ncols_max);

  // Writes a transformed constraint row; returns the transformed rhs.
  const auto fill_row = [&](std::size_t r, const std::vector<double>& a,
                            double b) {
    double rhs = b;
    for (std::size_t v = 0; v < nv; ++v) {
      const double c = a[v];
      if (c == 0.0) continue;
      switch (vmap[v].kind) {
        case VarKind::kShift:
          tab.at(r, vmap[v].col) += c;
          rhs -= c * lp.lo[v];
          break;
        case VarKind::kMirror:
          tab.at(r, vmap[v].col) -= c;
          rhs -= c * lp.hi[v];
          break;
        case VarKind::kSplit:
          tab.at(r, vmap[v].col) += c;
          tab.at(r, vmap[v].col_neg) -= c;
          break;
      }
    }
    tab.rhs(r) = rhs;
  };

  std::size_t r = 0;
  for (std::size_t k = 0; k < lp.ineq_a.size(); ++k, ++r) {
    fill_row(r, lp.ineq_a[k], lp.ineq_b[k]);
    tab.at(r, slack_start + r) = 1.0;
  }
  for (std::size_t v : range_vars) {
    tab.at(r, vmap[v].col) = 1.0;
    tab.rhs(r) = lp.hi[v] - lp.lo[v];
    tab.at(r, slack_start + r) = 1.0;
    ++r;
  }
  for (std::size_t k = 0; k < n_eq; ++k, ++r) {
    fill_row(r, lp.eq_a[k], lp.eq_b[k]);
  }

  // Normalize rhs >= 0 and pick the starting basis: a +1 slack where
  // available, an artificial column otherwise.
  std::size_t nart = 0;
  std::vector<std::size_t> art_rows;
  for (r = 0; r < nrows; ++r) {
    if (tab.rhs(r) < 0.0) {
      double* row = tab.row(r);
      for (std::size_t j = 0; j < tab.width(); ++j) row[j] = -row[j];
    }
    const bool has_unit_slack =
        r < n_ineq && tab.at(r, slack_start + r) == 1.0;
    if (has_unit_slack) {
      tab.basis()[r] = slack_start + r;
    } else {
      const std::size_t c = art_start + nart++;
      tab.at(r, c) = 1.0;
      tab.basis()[r] = c;
      art_rows.push_back(r);
    }
  }
  const std::size_t ncols = art_start + nart;
  const std::size_t cap = opts.max_iterations_factor * (nrows + ncols);
  std::size_t iters = 0;

  LpSolution sol;

  // Phase 1: minimize the artificial sum. cost.back() tracks the negated
  // phase objective.
  std::vector<double> cost(tab.width(), 0.0);
  if (nart > 0) {
    for (std::size_t k = 0; k < nart; ++k) cost[art_start + k] = 1.0;
    for (std::size_t ar : art_rows) {
      const double* row = tab.row(ar);
      for (std::size_t j = 0; j < tab.width(); ++j) cost[j] -= row[j];
    }
    const LoopResult res =
        simplex_loop(&tab, &cost, ncols, opts, cap, &iters);
    if (res == LoopResult::kIterationLimit) {
      sol.status = LpStatus::kIterationLimit;
      sol.iterations = iters;
      return sol;
    }
    // Phase 1 is bounded below by zero, so kUnbounded cannot occur here.
    if (-cost[tab.cols()] > opts.feasibility_tol) {
      sol.status = LpStatus::kInfeasible;
      sol.iterations = iters;
      return sol;
    }
    // Drive leftover artificials out of the basis; a row with no usable
    // pivot is redundant and gets dropped.
    for (std::size_t rr = 0; rr < tab.rows();) {
      if (tab.basis()[rr] < art_start) {
        ++rr;
        continue;
      }
      std::size_t pc = art_start;
      for (std::size_t j = 0; j < art_start; ++j) {
        if (std::abs(tab.at(rr, j)) > opts.pivot_tol) {
          pc = j;
          break;
        }
      }
      if (pc < art_start) {
        tab.pivot(rr, pc, &cost);
        ++rr;
      } else {
        tab.drop_row(rr);
      }
    }
  }

  // Phase 2 objective in transformed columns.
  std::vector<double> cost2(tab.width(), 0.0);
  for (std::size_t v = 0; v < nv; ++v) {
    const double c = lp.objective[v];
    if (c == 0.0) continue;
    switch (vmap[v].kind) {
      case VarKind::kShift:
        cost2[vmap[v].col] += c;
        break;
      case VarKind::kMirror:
        cost2[vmap[v].col] -= c;
        break;
      case VarKind::kSplit:
        cost2[vmap[v].col] += c;
        cost2[vmap[v].col_neg] -= c;
        break;
    }
  }
  for (std::size_t rr = 0; rr < tab.rows(); ++rr) {
    const std::size_t b = tab.basis()[rr];
    const double cb = cost2[b];
    if (cb == 0.0) continue;
    const double* row = tab.row(rr);
    for (std::size_t j = 0; j < tab.width(); ++j) cost2[j] -= cb * row[j];
    cost2[b] = 0.0;
  }

  const LoopResult res =
      simplex_loop(&tab, &cost2, art_start, opts, cap, &iters);
  sol.iterations = iters;
  if (res == LoopResult::kIterationLimit) {
    sol.status = LpStatus::kIterationLimit;
    return sol;
  }
  if (res == LoopResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  // Recover x from the basic solution.
  std::vector<double> xprime(ns, 0.0);
  for (std::size_t rr = 0; rr < tab.rows(); ++rr) {
    if (tab.basis()[rr] < ns) {
      xprime[tab.basis()[rr]] = std::max(tab.rhs(rr), 0.0);
    }
  }
  sol.x.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    switch (vmap[v].kind) {
      case VarKind::kShift:
        sol.x[v] = lp.lo[v] + xprime[vmap[v].col];
        break;
      case VarKind::kMirror:
        sol.x[v] = lp.hi[v] - xprime[vmap[v].col];
        break;
      case VarKind::kSplit:
        sol.x[v] = xprime[vmap[v].col] - xprime[vmap[v].col_neg];
        break;
    }
  }
  sol.objective = lp.objective_offset;
  for (std::size_t v = 0; v < nv; ++v) {
    sol.objective += lp.objective[v] * sol.x[v];
  }
  sol.status = LpStatus::kOptimal;
  return sol;
}

}  // namespace minstruct
