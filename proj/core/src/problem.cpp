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

#include "minstruct/problem.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace minstruct {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

IndexSet::IndexSet(std::vector<int> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

IndexSet IndexSet::full(int k) {
  IndexSet s;
  s.elems_.resize(k);
  for (int i = 0; i < k; ++i) s.elems_[i] = i;
  return s;
}

bool IndexSet::contains(int i) const {
  return std::binary_search(elems_.begin(), elems_.end(), i);
}

void IndexSet::insert(int i) {
  const auto it = std::lower_bound(elems_.begin(), elems_.end(), i);
  if (it == elems_.end() || *it != i) elems_.insert(it, i);
}

void IndexSet::insert_all(const IndexSet& other) {
  std::vector<int> merged;
  merged.reserve(elems_.size() + other.elems_.size());
  std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(),
                 other.elems_.end(), std::back_inserter(merged));
  elems_ = std::move(merged);
}

void IndexSet::erase(int i) {
  const auto it = std::lower_bound(elems_.begin(), elems_.end(), i);
  if (it != elems_.end() && *it == i) elems_.erase(it);
}

std::vector<int> IndexSet::complement(int k) const {
  std::vector<int> out;
  out.reserve(k - size());
  auto it = elems_.begin();
  for (int i = 0; i < k; ++i) {
    while (it != elems_.end() && *it < i) ++it;
    if (it == elems_.end() || *it != i) out.push_back(i);
  }
  return out;
}

BasicSet BasicSet::box(std::vector<double> lo, std::vector<double> hi) {
  BasicSet s;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

BasicSet BasicSet::unbounded(std::size_t dim) {
  BasicSet s;
  s.lo.assign(dim, -kInf);
  s.hi.assign(dim, kInf);
  return s;
}

bool BasicSet::contains(const std::vector<double>& x, double tol) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
  }
  for (std::size_t r = 0; r < ineq_a.size(); ++r) {
    double acc = -ineq_b[r];
    for (std::size_t i = 0; i < ineq_a[r].size(); ++i) {
      acc += ineq_a[r][i] * x[i];
    }
    if (acc > tol) return false;
  }
  for (std::size_t r = 0; r < eq_a.size(); ++r) {
    double acc = -eq_b[r];
    for (std::size_t i = 0; i < eq_a[r].size(); ++i) acc += eq_a[r][i] * x[i];
    if (acc > tol || acc < -tol) return false;
  }
  return true;
}

void normalize_problem(MSProblem* p) {
  for (ConvexExpr& e : p->pieces) e = canonicalize(e);
  for (ConvexExpr& e : p->constraints) e = canonicalize(e);
}

void validate_problem(const MSProblem& p) {
  if (p.pieces.empty()) {
    throw std::invalid_argument("problem has no objective pieces");
  }
  if (p.basic.lo.size() != p.d || p.basic.hi.size() != p.d) {
    throw std::invalid_argument("basic-set bound vectors do not match d");
  }
  if (p.basic.ineq_a.size() != p.basic.ineq_b.size() ||
      p.basic.eq_a.size() != p.basic.eq_b.size()) {
    throw std::invalid_argument("basic-set row/rhs count mismatch");
  }
  for (const auto& row : p.basic.ineq_a) {
    if (row.size() != p.d) {
      throw std::invalid_argument("basic-set inequality row size mismatch");
    }
  }
  for (const auto& row : p.basic.eq_a) {
    if (row.size() != p.d) {
      throw std::invalid_argument("basic-set equality row size mismatch");
    }
  }
  for (std::size_t i = 0; i < p.basic.lo.size(); ++i) {
    if (p.basic.lo[i] > p.basic.hi[i]) {
      throw std::invalid_argument("basic-set has an empty bound interval");
    }
  }
  for (const ConvexExpr& e : p.pieces) {
    check_dimension(e, p.d);
    if (!classify(e).certified_convex) {
      throw std::invalid_argument("objective piece lacks a convexity "
                                  "certificate; canonicalize first");
    }
  }
  // Constraints may be uncertified; such instances are limited to the
  // reference oracle.
  for (const ConvexExpr& e : p.constraints) {
    check_dimension(e, p.d);
  }
}

bool feasible(const MSProblem& p, const std::vector<double>& x,
              const IndexSet& S, double tol) {
  if (x.size() != p.d) {
    throw std::invalid_argument("feasible: point dimension mismatch");
  }
  if (!p.basic.contains(x, tol)) return false;
  for (int j : S) {
    if (j < 0 || j >= p.m()) {
      throw std::invalid_argument("feasible: constraint index out of range");
    }
    if (evaluate(p.constraints[j], x) > tol) return false;
  }
  return true;
}

double eval_objective(const MSProblem& p, const std::vector<double>& x,
                      const IndexSet& H, const IndexSet& S, double tol) {
  if (H.empty()) {
    throw std::invalid_argument("eval_objective: empty piece subset");
  }
  if (!feasible(p, x, S, tol)) return kInf;
  double best = kInf;
  for (int i : H) {
    if (i < 0 || i >= p.n()) {
      throw std::invalid_argument("eval_objective: piece index out of range");
    }
    best = std::min(best, evaluate(p.pieces[i], x));
  }
  return best;
}

std::pair<double, int> min_piece_value(const MSProblem& p,
                                       const std::vector<double>& x) {
  double best = kInf;
  int arg = -1;
  for (int i = 0; i < p.n(); ++i) {
    const double v = evaluate(p.pieces[i], x);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  return {best, arg};
}

IndexSet active_pieces(const MSProblem& p, const std::vector<double>& x,
                       double rho) {
  if (rho < 0.0) throw std::invalid_argument("active_pieces: rho < 0");
  const double floor = min_piece_value(p, x).first;
  IndexSet out;
  for (int i = 0; i < p.n(); ++i) {
    if (evaluate(p.pieces[i], x) <= floor + rho) out.insert(i);
  }
  return out;
}

IndexSet active_constraints(const MSProblem& p, const std::vector<double>& x,
                            const IndexSet& S, double tol) {
  IndexSet out;
  for (int j : S) {
    const double v = evaluate(p.constraints[j], x);
    if (v >= -tol && v <= tol) out.insert(j);
  }
  return out;
}

bool local_optimality_certificate(const MSProblem& p, int i_star,
                                  const std::vector<double>& x_star,
                                  double rho,
                                  const std::map<int, double>& nu,
                                  double tol) {
  const auto it_star = nu.find(i_star);
  if (it_star == nu.end()) {
    throw std::invalid_argument(
        "local_optimality_certificate: no value for the incumbent piece");
  }
  for (int i : active_pieces(p, x_star, rho)) {
    const auto it = nu.find(i);
    if (it == nu.end()) {
      throw std::invalid_argument(
          "local_optimality_certificate: no value for an active piece");
    }
    if (it->second < it_star->second - tol) return false;
  }
  return true;
}

}  // namespace minstruct
