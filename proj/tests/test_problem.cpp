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

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "doctest.h"
#include "minstruct/instances.hpp"
#include "minstruct/problem.hpp"
#include "minstruct/rng.hpp"

using namespace minstruct;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("index set: construction sorts and deduplicates") {
  const IndexSet s(std::vector<int>{3, 1, 3, 0});
  CHECK(s.size() == 3);
  CHECK(s.elements() == std::vector<int>{0, 1, 3});
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(2));
}

TEST_CASE("index set: insert erase complement full") {
  IndexSet s;
  CHECK(s.empty());
  s.insert(2);
  s.insert(0);
  s.insert(2);
  CHECK(s.elements() == std::vector<int>{0, 2});
  s.erase(0);
  CHECK(s.elements() == std::vector<int>{2});
  s.insert_all(IndexSet(std::vector<int>{1, 2, 4}));
  CHECK(s.elements() == std::vector<int>{1, 2, 4});
  CHECK(s.complement(6) == std::vector<int>{0, 3, 5});
  CHECK(IndexSet::full(3).elements() == std::vector<int>{0, 1, 2});
  CHECK(IndexSet::full(3) == IndexSet(std::vector<int>{2, 1, 0}));
}

TEST_CASE("basic set: box membership") {
  const BasicSet box = BasicSet::box({-1.0, 0.0}, {1.0, 2.0});
  CHECK(box.contains({0.0, 1.0}, 1e-9));
  CHECK(box.contains({1.0, 2.0}, 1e-9));
  CHECK_FALSE(box.contains({1.1, 1.0}, 1e-9));
  const BasicSet free_set = BasicSet::unbounded(2);
  CHECK(free_set.contains({1e9, -1e9}, 1e-9));
}

TEST_CASE("basic set: inequality and equality rows") {
  BasicSet s = BasicSet::box({-10.0, -10.0}, {10.0, 10.0});
  s.ineq_a = {{1.0, 1.0}};
  s.ineq_b = {1.0};
  s.eq_a = {{1.0, -1.0}};
  s.eq_b = {0.0};
  CHECK(s.contains({0.5, 0.5}, 1e-9));
  CHECK_FALSE(s.contains({0.6, 0.5}, 1e-9));   // equality broken
  CHECK_FALSE(s.contains({0.7, 0.7}, 1e-9));   // inequality broken
}

TEST_CASE("problem: feasibility on the one-dimensional toy") {
  const MSProblem p = toy_illustration();
  const IndexSet full_s = IndexSet::full(p.m());
  // 3/2 - x^2 <= 0 holds at 1.3, fails at 0.
  CHECK(feasible(p, {1.3}, full_s, 1e-9));
  CHECK_FALSE(feasible(p, {0.0}, full_s, 1e-9));
  // Without the quadratic cut, 0 becomes feasible.
  CHECK(feasible(p, {0.0}, IndexSet(std::vector<int>{1, 2}), 1e-9));
  CHECK(eval_objective(p, {0.0}, IndexSet::full(p.n()), full_s, 1e-9) == kInf);
}

TEST_CASE("problem: piece values of the regularized toy at a probe point") {
  const MSProblem p = toy_tikhonov();
  REQUIRE(p.n() == 6);
  REQUIRE(p.m() == 6);
  const std::vector<double> x{2.0, 2.0};
  const std::vector<double> expected{1.0, 0.0, 5.0, -3.0, 7.0, 2.0};
  for (int i = 0; i < p.n(); ++i) {
    CHECK(evaluate(p.pieces[i], x) == expected[i]);
  }
  CHECK(min_piece_value(p, x).first == -3.0);
  CHECK(min_piece_value(p, x).second == 3);
  // No functional constraints requested: only the box matters at (2, 2).
  CHECK(eval_objective(p, x, IndexSet::full(p.n()), IndexSet(), 1e-9) == -3.0);
}

TEST_CASE("problem: objective at the optimizer with every constraint") {
  const MSProblem p = toy_tikhonov();
  const std::vector<double> x{-1.5, -0.25};
  CHECK(eval_objective(p, x, IndexSet::full(p.n()), IndexSet::full(p.m()),
                       1e-9) == -3.125);
  // Constraints 1 and 4 hold with equality at the optimizer.
  const IndexSet tight =
      active_constraints(p, x, IndexSet::full(p.m()), 1e-9);
  CHECK(tight.elements() == std::vector<int>{1, 4});
}

TEST_CASE("problem: active pieces at increasing margins") {
  const MSProblem p = toy_tikhonov();
  const std::vector<double> x{2.0, 2.0};
  CHECK(active_pieces(p, x, 0.0).elements() == std::vector<int>{3});
  CHECK(active_pieces(p, x, 3.0).elements() == std::vector<int>{1, 3});
  CHECK(active_pieces(p, x, 5.0).elements() == std::vector<int>{0, 1, 3, 5});
  CHECK(active_pieces(p, x, 100.0).size() == p.n());
  CHECK_THROWS_AS(active_pieces(p, x, -1.0), std::invalid_argument);
}

TEST_CASE("problem: zero-margin active set is contained in every other") {
  const MSProblem p = toy_tikhonov();
  Rng rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    const std::vector<double> x{rng.uniform_real(-5.0, 5.0),
                                rng.uniform_real(-20.0, 20.0)};
    const double rho = rng.uniform_real(0.0, 6.0);
    const IndexSet a0 = active_pieces(p, x, 0.0);
    const IndexSet ar = active_pieces(p, x, rho);
    for (int i : a0) CHECK(ar.contains(i));
    CHECK(ar.contains(min_piece_value(p, x).second));
  }
}

TEST_CASE("problem: objective is antitone in H and isotone in S") {
  const MSProblem p = toy_tikhonov();
  Rng rng(77);
  const IndexSet full_h = IndexSet::full(p.n());
  const IndexSet full_s = IndexSet::full(p.m());
  for (int rep = 0; rep < 40; ++rep) {
    const std::vector<double> x{rng.uniform_real(-5.0, 5.0),
                                rng.uniform_real(-20.0, 20.0)};
    std::vector<int> hs, ss;
    for (int i = 0; i < p.n(); ++i) {
      if (rng.uniform_below(2) == 0) hs.push_back(i);
    }
    hs.push_back(static_cast<int>(rng.uniform_below(p.n())));
    for (int j = 0; j < p.m(); ++j) {
      if (rng.uniform_below(2) == 0) ss.push_back(j);
    }
    const IndexSet h(hs);
    const IndexSet s(ss);
    // Fewer pieces can only raise the minimum; fewer constraints can only
    // lower the restricted value.
    CHECK(eval_objective(p, x, h, s, 1e-9) >=
          eval_objective(p, x, full_h, s, 1e-9));
    CHECK(eval_objective(p, x, full_h, s, 1e-9) <=
          eval_objective(p, x, full_h, full_s, 1e-9));
  }
}

TEST_CASE("problem: lowest index wins a tied piece minimum") {
  MSProblem p;
  p.name = "tie";
  p.d = 1;
  p.pieces = {make_affine({0.0}, 1.0), make_affine({0.0}, 1.0),
              make_affine({0.0}, 0.5)};
  p.basic = BasicSet::box({-1.0}, {1.0});
  CHECK(min_piece_value(p, {0.0}).second == 2);
  p.pieces[2] = make_affine({0.0}, 1.0);
  CHECK(min_piece_value(p, {0.0}).second == 0);
}

TEST_CASE("problem: local optimality certificate") {
  const MSProblem p = toy_tikhonov();
  const std::vector<double> x_star{-1.5, -0.25};
  std::map<int, double> nu{{4, -3.125}};
  CHECK(local_optimality_certificate(p, 4, x_star, 1.0, nu, 1e-9));
  // A probe point where an active piece undercuts the incumbent value.
  const std::vector<double> x{2.0, 2.0};
  std::map<int, double> nu_bad{{1, -5.0}, {3, -3.0}};
  CHECK_FALSE(local_optimality_certificate(p, 3, x, 3.0, nu_bad, 1e-9));
  std::map<int, double> nu_missing{{3, -3.0}};
  CHECK_THROWS_AS(
      local_optimality_certificate(p, 3, x, 3.0, nu_missing, 1e-9),
      std::invalid_argument);
}

TEST_CASE("problem: validation rejects malformed inputs") {
  MSProblem p;
  p.name = "bad";
  p.d = 1;
  p.basic = BasicSet::box({-1.0}, {1.0});
  // No pieces.
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
  p.pieces = {make_affine({1.0, 2.0}, 0.0)};  // wrong dimension
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
  p.pieces = {make_neg(make_square_affine({1.0}, 0.0))};  // uncertified piece
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
  p.pieces = {make_affine({1.0}, 0.0)};
  CHECK_NOTHROW(validate_problem(p));
  // Constraints may be uncertified (the toy's concave cut relies on this),
  // but their dimensions must agree.
  p.constraints = {make_neg(make_square_affine({1.0}, 0.0))};
  CHECK_NOTHROW(validate_problem(p));
  p.constraints = {make_affine({1.0, 1.0}, 0.0)};
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
}

TEST_CASE("problem: normalization restores certificates before validation") {
  MSProblem p;
  p.name = "neg-affine";
  p.d = 1;
  p.pieces = {make_neg(make_affine({1.0}, 0.0))};
  p.basic = BasicSet::box({-1.0}, {1.0});
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
  normalize_problem(&p);
  CHECK_NOTHROW(validate_problem(p));
  CHECK(evaluate(p.pieces[0], {0.5}) == -0.5);
}
