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

#include "minstruct/ref_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minstruct/lp_oracle.hpp"

namespace minstruct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Interval-arithmetic bound tightening from basic-set rows. Two sweeps are
// enough for the patterns in this project (a simplex equality row bounding
// otherwise-unbounded nonnegative coordinates).
void tighten_bounds(const BasicSet& basic, std::vector<double>* lo,
                    std::vector<double>* hi) {
  const auto apply_row = [&](const std::vector<double>& a, double b,
                             bool is_eq) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (a[v] == 0.0) continue;
      double rest_min = 0.0;  // min of sum_{w != v} a_w x_w
      double rest_max = 0.0;
      for (std::size_t w = 0; w < a.size(); ++w) {
        if (w == v || a[w] == 0.0) continue;
        const double t1 = a[w] * (*lo)[w];
        const double t2 = a[w] * (*hi)[w];
        rest_min += std::min(t1, t2);
        rest_max += std::max(t1, t2);
      }
      // a_v x_v <= b - rest_min (and >= b - rest_max for equalities).
      if (std::isfinite(rest_min)) {
        const double bound = (b - rest_min) / a[v];
        if (a[v] > 0.0) {
          (*hi)[v] = std::min((*hi)[v], bound);
        } else {
          (*lo)[v] = std::max((*lo)[v], bound);
        }
      }
      if (is_eq && std::isfinite(rest_max)) {
        const double bound = (b - rest_max) / a[v];
        if (a[v] > 0.0) {
          (*lo)[v] = std::max((*lo)[v], bound);
        } else {
          (*hi)[v] = std::min((*hi)[v], bound);
        }
      }
    }
  };
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (std::size_t r = 0; r < basic.ineq_a.size(); ++r) {
      apply_row(basic.ineq_a[r], basic.ineq_b[r], false);
    }
    for (std::size_t r = 0; r < basic.eq_a.size(); ++r) {
      apply_row(basic.eq_a[r], basic.eq_b[r], true);
    }
  }
}

struct MonotoneInfo {
  bool found = false;
  std::size_t coord = 0;
  double obj_slope = 0.0;
  std::vector<int> bound_cons;       // constraints acting as lower bounds
  std::vector<double> bound_slopes;  // their (negative) slopes
  std::vector<int> filter_cons;      // constraints independent of the coord
};

}  // namespace

RefOracle::RefOracle(const MSProblem& problem, CostModel cost, GridSpec grid)
    : Oracle(problem, cost), grid_(grid) {
  const std::size_t d = problem.d;
  // Reduced row echelon form of the equality system; pivot columns become
  // dependent coordinates.
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < problem.basic.eq_a.size(); ++r) {
    std::vector<double> row = problem.basic.eq_a[r];
    row.push_back(problem.basic.eq_b[r]);
    rows.push_back(std::move(row));
  }
  std::size_t lead = 0;
  for (std::size_t col = 0; col < d && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    for (std::size_t r = lead + 1; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) < 1e-12) continue;
    std::swap(rows[lead], rows[pivot]);
    const double inv = 1.0 / rows[lead][col];
    for (double& v : rows[lead]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead) continue;
      const double f = rows[r][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= d; ++j) rows[r][j] -= f * rows[lead][j];
    }
    dep_coords_.push_back(col);
    ++lead;
  }
  for (std::size_t r = lead; r < rows.size(); ++r) {
    if (std::abs(rows[r][d]) > 1e-9) eq_inconsistent_ = true;
  }
  // x[dep] = b - sum_{other} a_w x_w from the reduced rows.
  for (std::size_t k = 0; k < dep_coords_.size(); ++k) {
    std::vector<double> coeff(d, 0.0);
    for (std::size_t w = 0; w < d; ++w) {
      if (w == dep_coords_[k]) continue;
      coeff[w] = -rows[k][w];
    }
    dep_coeff_.push_back(std::move(coeff));
    dep_offset_.push_back(rows[k][d]);
  }
  range_lo_ = problem.basic.lo;
  range_hi_ = problem.basic.hi;
  tighten_bounds(problem.basic, &range_lo_, &range_hi_);
}

OracleResult RefOracle::solve_uncached(int piece, const IndexSet& S) {
  const MSProblem& p = problem();
  const std::size_t d = p.d;
  OracleResult out;
  if (eq_inconsistent_) {
    out.status = SolveStatus::kInfeasible;
    out.value = kInf;
    return out;
  }

  std::vector<bool> is_dep(d, false);
  for (std::size_t c : dep_coords_) is_dep[c] = true;

  // Monotone-coordinate scan: the objective must rise in the coordinate with
  // a constant slope, no equality or basic inequality row may touch it, and
  // every subset constraint must either ignore it or bound it from below.
  MonotoneInfo mono;
  for (std::size_t e = 0; e < d && !mono.found; ++e) {
    if (is_dep[e]) continue;
    bool in_rows = false;
    for (const auto& row : p.basic.eq_a) {
      if (row[e] != 0.0) in_rows = true;
    }
    for (const auto& row : p.basic.ineq_a) {
      if (row[e] != 0.0) in_rows = true;
    }
    if (in_rows) continue;
    const auto obj_slope = separable_slope(p.pieces[piece], e);
    if (!obj_slope || *obj_slope <= 0.0) continue;
    MonotoneInfo cand;
    cand.coord = e;
    cand.obj_slope = *obj_slope;
    bool ok = true;
    for (int j : S) {
      const auto s = separable_slope(p.constraints[j], e);
      if (!s || *s > 0.0) {
        ok = false;
        break;
      }
      if (*s < 0.0) {
        cand.bound_cons.push_back(j);
        cand.bound_slopes.push_back(*s);
      } else {
        cand.filter_cons.push_back(j);
      }
    }
    if (!ok) continue;
    cand.found = true;
    mono = std::move(cand);
  }
  if (!mono.found) {
    for (int j : S) mono.filter_cons.push_back(j);
  }

  // Free coordinates and their (finite) scan ranges.
  std::vector<std::size_t> free_coords;
  for (std::size_t c = 0; c < d; ++c) {
    if (is_dep[c]) continue;
    if (mono.found && c == mono.coord) continue;
    free_coords.push_back(c);
  }
  if (free_coords.size() > 3) {
    throw UnsupportedExpression(
        "RefOracle: more than 3 free dimensions after elimination");
  }
  double max_range = 0.0;
  for (std::size_t c : free_coords) {
    if (!std::isfinite(range_lo_[c]) || !std::isfinite(range_hi_[c])) {
      throw UnsupportedExpression(
          "RefOracle: free coordinate " + std::to_string(c) +
          " has no finite scan range");
    }
    max_range = std::max(max_range, range_hi_[c] - range_lo_[c]);
  }
  const double tol = grid_.feasibility_scale * std::max(max_range, 1.0);

  // Unbounded iff the monotone coordinate has no floor; any feasible point
  // in the remaining coordinates then drives the value to -infinity. Without
  // a monotone coordinate the scan region is compact, so this cannot occur.
  const bool unbounded_mode =
      mono.found && mono.bound_cons.empty() &&
      !std::isfinite(range_lo_[mono.coord]);

  // Assembles the full point for given free values; returns false when a
  // feasibility filter rejects it. The value written to *value is the piece
  // value (meaningless in unbounded mode).
  std::vector<double> x(d, 0.0);
  const auto try_point = [&](const std::vector<double>& free_vals,
                             double* value) {
    for (std::size_t k = 0; k < free_coords.size(); ++k) {
      x[free_coords[k]] = free_vals[k];
    }
    if (mono.found) x[mono.coord] = 0.0;
    for (std::size_t k = 0; k < dep_coords_.size(); ++k) {
      double v = dep_offset_[k];
      const std::vector<double>& coeff = dep_coeff_[k];
      for (std::size_t w = 0; w < d; ++w) {
        if (coeff[w] != 0.0) v += coeff[w] * x[w];
      }
      x[dep_coords_[k]] = v;
    }
    for (std::size_t c = 0; c < d; ++c) {
      if (mono.found && c == mono.coord) continue;
      if (x[c] < p.basic.lo[c] - tol || x[c] > p.basic.hi[c] + tol) {
        return false;
      }
    }
    for (std::size_t r = 0; r < p.basic.ineq_a.size(); ++r) {
      double acc = -p.basic.ineq_b[r];
      for (std::size_t w = 0; w < d; ++w) {
        if (p.basic.ineq_a[r][w] != 0.0) acc += p.basic.ineq_a[r][w] * x[w];
      }
      if (acc > tol) return false;
    }
    for (int j : mono.filter_cons) {
      if (evaluate(p.constraints[j], x) > tol) return false;
    }
    if (mono.found) {
      if (unbounded_mode) {
        // Feasibility of the remaining coordinates is all that matters; the
        // monotone coordinate has no floor, so the value runs to -infinity.
        *value = -kInf;
        return true;
      }
      double floor = range_lo_[mono.coord];
      for (std::size_t k = 0; k < mono.bound_cons.size(); ++k) {
        const double implied =
            evaluate(p.constraints[mono.bound_cons[k]], x) /
            (-mono.bound_slopes[k]);
        floor = std::max(floor, implied);
      }
      if (floor > range_hi_[mono.coord] + tol) return false;
      x[mono.coord] = floor;
    }
    *value = evaluate(p.pieces[piece], x);
    return true;
  };

  // Exact candidate values for a single free coordinate: range ends, roots
  // of each (flattened) constraint restricted to that coordinate, and the
  // crossings of the affine lower bounds on the monotone coordinate.
  std::vector<double> exact_candidates;
  if (free_coords.size() == 1) {
    const std::size_t f = free_coords[0];
    exact_candidates.push_back(range_lo_[f]);
    exact_candidates.push_back(range_hi_[f]);
    if (d == 1) {
      const auto add_roots = [&](const ConvexExpr& e) {
        const auto q = univariate_quadratic(e);
        if (!q) return;
        const auto [c2, c1, c0] = *q;
        if (c2 == 0.0) {
          if (c1 != 0.0) exact_candidates.push_back(-c0 / c1);
          return;
        }
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc < 0.0) return;
        const double sq = std::sqrt(disc);
        exact_candidates.push_back((-c1 - sq) / (2.0 * c2));
        exact_candidates.push_back((-c1 + sq) / (2.0 * c2));
      };
      for (int j : S) {
        const ConvexExpr& c = p.constraints[j];
        if (c.kind == ExprKind::kMaxOf) {
          for (const ConvexExpr& child : c.children) add_roots(child);
        } else {
          add_roots(c);
        }
      }
    }
    if (mono.found) {
      // Pairwise crossings of the affine implied bounds, plus crossings with
      // the coordinate's own lower bound. Affine in the free coordinate, so
      // two samples determine each bound exactly.
      const auto implied_at = [&](std::size_t k, double u) {
        std::vector<double> probe(d, 0.0);
        probe[f] = u;
        probe[mono.coord] = 0.0;
        for (std::size_t kk = 0; kk < dep_coords_.size(); ++kk) {
          double v = dep_offset_[kk];
          for (std::size_t w = 0; w < d; ++w) {
            if (dep_coeff_[kk][w] != 0.0) v += dep_coeff_[kk][w] * probe[w];
          }
          probe[dep_coords_[kk]] = v;
        }
        return evaluate(p.constraints[mono.bound_cons[k]], probe) /
               (-mono.bound_slopes[k]);
      };
      const std::size_t nb = mono.bound_cons.size();
      std::vector<double> at0(nb), at1(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        at0[k] = implied_at(k, 0.0);
        at1[k] = implied_at(k, 1.0);
      }
      const auto add_affine_crossing = [&](double a0, double a1, double b0,
                                           double b1) {
        const double da = a1 - a0;
        const double db = b1 - b0;
        if (da == db) return;
        exact_candidates.push_back((b0 - a0) / (da - db));
      };
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = k + 1; l < nb; ++l) {
          add_affine_crossing(at0[k], at1[k], at0[l], at1[l]);
        }
        if (std::isfinite(range_lo_[mono.coord])) {
          add_affine_crossing(at0[k], at1[k], range_lo_[mono.coord],
                              range_lo_[mono.coord]);
        }
      }
    }
    std::sort(exact_candidates.begin(), exact_candidates.end());
  }

  const std::size_t axis_points = free_coords.size() >= 3
                                      ? grid_.points_per_axis_3d
                                      : grid_.points_per_axis;
  std::vector<double> win_lo, win_hi;
  for (std::size_t c : free_coords) {
    win_lo.push_back(range_lo_[c]);
    win_hi.push_back(range_hi_[c]);
  }

  double best_value = kInf;
  std::vector<double> best_x;
  std::vector<double> free_vals(free_coords.size(), 0.0);

  const std::size_t rounds = unbounded_mode ? 1 : grid_.rounds;
  for (std::size_t round = 0; round < rounds; ++round) {
    // Lattice scan of the current window via an odometer counter.
    std::vector<std::size_t> idx(free_coords.size(), 0);
    bool done = free_coords.empty() && round > 0;
    while (!done) {
      for (std::size_t k = 0; k < free_coords.size(); ++k) {
        const double t = axis_points == 1
                             ? 0.5
                             : static_cast<double>(idx[k]) /
                                   static_cast<double>(axis_points - 1);
        free_vals[k] = win_lo[k] + t * (win_hi[k] - win_lo[k]);
      }
      double value = 0.0;
      if (try_point(free_vals, &value)) {
        if (unbounded_mode) {
          out.status = SolveStatus::kUnbounded;
          out.value = -kInf;
          return out;
        }
        if (value < best_value) {
          best_value = value;
          best_x = x;
        }
      }
      // Advance the odometer.
      std::size_t k = 0;
      for (; k < free_coords.size(); ++k) {
        if (++idx[k] < axis_points) break;
        idx[k] = 0;
      }
      done = k == free_coords.size();
    }
    // Exact candidates participate in every round they fall inside the
    // current window.
    if (free_coords.size() == 1) {
      for (double cand : exact_candidates) {
        if (!std::isfinite(cand)) continue;
        if (cand < win_lo[0] - tol || cand > win_hi[0] + tol) continue;
        free_vals[0] = std::clamp(cand, range_lo_[free_coords[0]],
                                  range_hi_[free_coords[0]]);
        double value = 0.0;
        if (try_point(free_vals, &value) && value < best_value) {
          best_value = value;
          best_x = x;
        }
      }
    }
    if (unbounded_mode) break;
    if (best_x.empty()) break;  // round 1 found nothing feasible
    // Shrink the window around the incumbent.
    for (std::size_t k = 0; k < free_coords.size(); ++k) {
      const std::size_t c = free_coords[k];
      const double width = (win_hi[k] - win_lo[k]) / grid_.shrink;
      const double center = best_x[c];
      win_lo[k] = std::max(range_lo_[c], center - 0.5 * width);
      win_hi[k] = std::min(range_hi_[c], center + 0.5 * width);
    }
  }

  if (unbounded_mode) {
    // No feasible point in the scan region at all.
    out.status = SolveStatus::kInfeasible;
    out.value = kInf;
    return out;
  }
  if (best_x.empty()) {
    out.status = SolveStatus::kInfeasible;
    out.value = kInf;
    return out;
  }
  out.status = SolveStatus::kOptimal;
  out.value = best_value;
  out.x_star = std::move(best_x);
  out.active = active_constraints(p, out.x_star, S, grid_.active_tol);
  return out;
}

CrossValidationReport cross_validate(const MSProblem& problem, int piece,
                                     const IndexSet& S, double value_tol) {
  CrossValidationReport rep;
  rep.piece = piece;
  rep.subset = S.elements();
  const CostModel cost;
  LpOracle lp(problem, cost);
  RefOracle ref(problem, cost);
  const OracleResult& a = lp.solve_piece(piece, S);
  const OracleResult& b = ref.solve_piece(piece, S);
  rep.lp_status = a.status;
  rep.ref_status = b.status;
  rep.lp_value = a.value;
  rep.ref_value = b.value;
  rep.abs_diff = std::abs(a.value - b.value);
  rep.agree = a.status == b.status &&
              (a.status != SolveStatus::kOptimal || rep.abs_diff <= value_tol);
  return rep;
}

}  // namespace minstruct
