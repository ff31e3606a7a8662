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
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "minstruct/instances.hpp"
#include "minstruct/problem_io.hpp"
#include "minstruct/rng.hpp"
#include "test_support.hpp"

using namespace minstruct;
using minstruct_test::TempDir;

namespace {

void check_same_evaluations(const MSProblem& a, const MSProblem& b) {
  REQUIRE(a.d == b.d);
  REQUIRE(a.n() == b.n());
  REQUIRE(a.m() == b.m());
  Rng rng(404);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(a.d);
    for (double& v : x) v = rng.uniform_real(-4.0, 4.0);
    for (int i = 0; i < a.n(); ++i) {
      CHECK(evaluate(a.pieces[i], x) == evaluate(b.pieces[i], x));
    }
    for (int j = 0; j < a.m(); ++j) {
      CHECK(evaluate(a.constraints[j], x) == evaluate(b.constraints[j], x));
    }
  }
}

}  // namespace

TEST_CASE("problem io: text round trip preserves the regularized toy") {
  const MSProblem p = toy_tikhonov();
  const MSProblem q = problem_from_json(problem_to_json(p));
  CHECK(q.name == p.name);
  CHECK(q.basic.lo == p.basic.lo);
  CHECK(q.basic.hi == p.basic.hi);
  CHECK(q.basic.eq_a == p.basic.eq_a);
  check_same_evaluations(p, q);
}

TEST_CASE("problem io: round trip preserves nested generated pieces") {
  PoplpParams params;
  params.n = 4;
  params.m = 6;
  params.p = 3;
  params.omega = 0.5;
  params.seed = 11;
  const MSProblem p = gen_poplp(params);
  const MSProblem q = problem_from_json(problem_to_json(p));
  // Key order may change across the trip; compare the parsed documents.
  CHECK(nlohmann::json::parse(q.provenance) ==
        nlohmann::json::parse(p.provenance));
  check_same_evaluations(p, q);
  CHECK(problem_to_json(q) == problem_to_json(p));
}

TEST_CASE("problem io: infinite bounds survive the trip") {
  const MSProblem p = toy_tikhonov();
  REQUIRE(std::isinf(p.basic.hi[1]));
  const MSProblem q = problem_from_json(problem_to_json(p));
  CHECK(q.basic.lo[1] == -std::numeric_limits<double>::infinity());
  CHECK(q.basic.hi[1] == std::numeric_limits<double>::infinity());
  CHECK(q.basic.lo[0] == -5.0);
  CHECK(q.basic.hi[0] == 5.0);
}

TEST_CASE("problem io: file save and load") {
  TempDir dir;
  const MSProblem p = toy_illustration();
  const std::string path = dir.file("toy.json");
  save_problem(p, path);
  const MSProblem q = load_problem(path);
  CHECK(q.name == p.name);
  check_same_evaluations(p, q);
  CHECK_THROWS(load_problem(dir.file("missing.json")));
}

TEST_CASE("problem io: malformed documents are rejected") {
  CHECK_THROWS_AS(problem_from_json("not json at all"),
                  std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(R"({"name":"x","d":1})"),
                  std::invalid_argument);
  // Unknown node kind inside an otherwise well-formed document.
  const std::string bad_kind = R"({
    "name": "bad", "d": 1,
    "pieces": [{"kind": "Cubic", "coeffs": [1.0], "offset": 0.0}],
    "constraints": [],
    "basic": {"ineq_a": [], "ineq_b": [], "eq_a": [], "eq_b": [],
              "lo": [-1.0], "hi": [1.0]},
    "provenance": ""
  })";
  CHECK_THROWS_AS(problem_from_json(bad_kind), std::invalid_argument);
}
