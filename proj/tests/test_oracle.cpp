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
#include <vector>

#include "doctest.h"
#include "minstruct/oracle.hpp"
#include "minstruct/problem.hpp"

using namespace minstruct;

namespace {

MSProblem tiny_problem(int n, int m) {
  MSProblem p;
  p.name = "tiny";
  p.d = 1;
  for (int i = 0; i < n; ++i) p.pieces.push_back(make_affine({1.0}, i));
  for (int j = 0; j < m; ++j) p.constraints.push_back(make_affine({1.0}, -j));
  p.basic = BasicSet::box({-1.0}, {1.0});
  return p;
}

// Canned oracle: value depends on the query only, no real solving. Counts
// how often the uncached path runs.
class FakeOracle : public Oracle {
 public:
  FakeOracle(const MSProblem& p, CostModel cost,
             std::vector<double> piece_values)
      : Oracle(p, cost), piece_values_(std::move(piece_values)) {}

  int uncached_calls = 0;

 protected:
  OracleResult solve_uncached(int piece, const IndexSet& S) override {
    ++uncached_calls;
    OracleResult r;
    r.value = piece_values_[piece] + 0.001 * S.size();
    r.x_star = {0.0};
    return r;
  }

 private:
  std::vector<double> piece_values_;
};

}  // namespace

TEST_CASE("cost model: time formula and matched calibration") {
  const CostModel plain{0.0, 1.5};
  CHECK(plain.time(4) == 8.0);
  CHECK(plain.time(0) == 0.0);
  const CostModel c6{1118.0, 1.5};
  CHECK(c6.time(10000) == 1001118.0);

  const CostModel matched = CostModel::matched(10000, 1.5);
  CHECK(matched.fixed_cost == doctest::Approx(1e6 / 999.0));
  CHECK(matched.time(10000) ==
        doctest::Approx(1000.0 * matched.fixed_cost).epsilon(1e-12));
}

TEST_CASE("oracle: memoization counts hits and misses") {
  const MSProblem p = tiny_problem(3, 4);
  FakeOracle oracle(p, CostModel{2.0, 1.5}, {5.0, 7.0, 9.0});

  const OracleResult& a = oracle.solve_piece(0, IndexSet());
  CHECK(a.value == 5.0);
  CHECK(oracle.uncached_calls == 1);
  CHECK(oracle.stats().misses == 1);
  CHECK(oracle.stats().hits == 0);
  CHECK(oracle.stats().model_time == 2.0);  // T(0) = 2 + 0

  const OracleResult& b = oracle.solve_piece(0, IndexSet());
  CHECK(&a == &b);  // the identical stored object
  CHECK(oracle.uncached_calls == 1);
  CHECK(oracle.stats().hits == 1);
  CHECK(oracle.stats().model_time == 2.0);

  oracle.solve_piece(0, IndexSet(std::vector<int>{1, 2}));
  CHECK(oracle.uncached_calls == 2);
  CHECK(oracle.stats().model_time ==
        2.0 + (2.0 + std::pow(2.0, 1.5)));  // + T(2)

  oracle.solve_piece(1, IndexSet());
  CHECK(oracle.stats().misses == 3);
  // Subset identity is on elements, not insertion order.
  IndexSet reordered;
  reordered.insert(2);
  reordered.insert(1);
  oracle.solve_piece(0, reordered);
  CHECK(oracle.uncached_calls == 3);
  CHECK(oracle.stats().hits == 2);
}

TEST_CASE("oracle: query validation") {
  const MSProblem p = tiny_problem(2, 3);
  FakeOracle oracle(p, CostModel{0.0, 1.5}, {1.0, 2.0});
  CHECK_THROWS_AS(oracle.solve_piece(-1, IndexSet()), std::invalid_argument);
  CHECK_THROWS_AS(oracle.solve_piece(2, IndexSet()), std::invalid_argument);
  CHECK_THROWS_AS(oracle.solve_piece(0, IndexSet(std::vector<int>{3})),
                  std::invalid_argument);
}

TEST_CASE("oracle: solve_model picks the lowest-index argmin") {
  const MSProblem p = tiny_problem(4, 2);
  FakeOracle oracle(p, CostModel{0.0, 1.5}, {9.0, 5.0, 5.0, 6.0});
  const auto [piece, result] = oracle.solve_model(IndexSet::full(4), IndexSet());
  CHECK(piece == 1);
  CHECK(result->value == 5.0);

  const auto [piece_h, result_h] =
      oracle.solve_model(IndexSet(std::vector<int>{0, 2, 3}), IndexSet());
  CHECK(piece_h == 2);
  CHECK(result_h->value == 5.0);
  CHECK_THROWS_AS(oracle.solve_model(IndexSet(), IndexSet()),
                  std::invalid_argument);
}
