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
// Min-structured problems: minimize the pointwise minimum of convex pieces
// over a polyhedral basic set intersected with convex functional constraints.
// Restrictions to a piece subset H and a constraint subset S are the working
// objects of every solver in this project.

#ifndef MINSTRUCT_PROBLEM_HPP_
#define MINSTRUCT_PROBLEM_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minstruct/expr.hpp"

namespace minstruct {

// Sorted duplicate-free index set over {0, ..., k-1}.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> elems);
  static IndexSet full(int k);

  bool contains(int i) const;
  void insert(int i);
  void insert_all(const IndexSet& other);
  void erase(int i);

  bool empty() const { return elems_.empty(); }
  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<int>& elements() const { return elems_; }
  std::vector<int>::const_iterator begin() const { return elems_.begin(); }
  std::vector<int>::const_iterator end() const { return elems_.end(); }

  // Sorted elements of {0, ..., k-1} not in this set.
  std::vector<int> complement(int k) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> elems_;
};

// Polyhedral ground set: ineq_a x <= ineq_b, eq_a x == eq_b, lo <= x <= hi.
struct BasicSet {
  std::vector<std::vector<double>> ineq_a;
  std::vector<double> ineq_b;
  std::vector<std::vector<double>> eq_a;
  std::vector<double> eq_b;
  std::vector<double> lo;
  std::vector<double> hi;

  static BasicSet box(std::vector<double> lo, std::vector<double> hi);
  static BasicSet unbounded(std::size_t dim);

  bool contains(const std::vector<double>& x, double tol) const;
};

struct MSProblem {
  std::string name;
  std::size_t d = 0;
  std::vector<ConvexExpr> pieces;
  std::vector<ConvexExpr> constraints;
  BasicSet basic;
  // Generator parameters as a serialized JSON object, or empty.
  std::string provenance;

  int n() const { return static_cast<int>(pieces.size()); }
  int m() const { return static_cast<int>(constraints.size()); }
};

// Canonicalizes every expression in place.
void normalize_problem(MSProblem* p);

// Structural checks: nonempty piece list, coefficient dimensions, basic-set
// shapes, and a convexity certificate for every piece and constraint.
// Throws std::invalid_argument on the first violation.
void validate_problem(const MSProblem& p);

// Membership in the domain restricted to constraint subset S.
bool feasible(const MSProblem& p, const std::vector<double>& x,
              const IndexSet& S, double tol);

// min over i in H of piece value at x if x lies in the S-restricted domain,
// +infinity otherwise. H must be nonempty.
double eval_objective(const MSProblem& p, const std::vector<double>& x,
                      const IndexSet& H, const IndexSet& S, double tol);

// Piece minimum at x ignoring feasibility, with its lowest-index argmin.
std::pair<double, int> min_piece_value(const MSProblem& p,
                                       const std::vector<double>& x);

// Pieces whose value at x lies within rho of the piece minimum at x.
IndexSet active_pieces(const MSProblem& p, const std::vector<double>& x,
                       double rho);

// Constraints from S whose value at x lies within tol of zero.
IndexSet active_constraints(const MSProblem& p, const std::vector<double>& x,
                            const IndexSet& S, double tol);

// Checks the local-optimality condition at (i_star, x_star): every piece
// active at x_star within rho must carry a full-constraint value at least
// nu[i_star] - tol. Throws std::invalid_argument when nu lacks an entry for
// an active piece or for i_star.
bool local_optimality_certificate(const MSProblem& p, int i_star,
                                  const std::vector<double>& x_star,
                                  double rho,
                                  const std::map<int, double>& nu,
                                  double tol);

}  // namespace minstruct

#endif  // MINSTRUCT_PROBLEM_HPP_
