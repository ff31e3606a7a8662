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

#include <benchmark/benchmark.h>

#include "minstruct/dag_sim.hpp"
#include "minstruct/instances.hpp"
#include "minstruct/lp_oracle.hpp"
#include "minstruct/simplex.hpp"

namespace {

using namespace minstruct;

LinearProgram random_lp(int d, int rows, std::uint64_t seed) {
  Rng rng(seed);
  LinearProgram lp;
  lp.num_vars = d;
  lp.objective.resize(d);
  for (double& c : lp.objective) c = rng.uniform_real(-2.0, 2.0);
  lp.lo.assign(d, 0.0);
  lp.hi.assign(d, 10.0);
  for (int r = 0; r < rows; ++r) {
    std::vector<double> a(d);
    for (double& c : a) c = rng.uniform_real(-1.0, 1.0);
    lp.ineq_a.push_back(std::move(a));
    lp.ineq_b.push_back(rng.uniform_real(1.0, 5.0));
  }
  return lp;
}

void BM_SimplexSolve(benchmark::State& state) {
  const LinearProgram lp =
      random_lp(static_cast<int>(state.range(0)),
                static_cast<int>(state.range(1)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp(lp));
  }
}
BENCHMARK(BM_SimplexSolve)->Args({6, 12})->Args({20, 60})->Args({40, 200});

void BM_PieceEvaluate(benchmark::State& state) {
  PoplpParams params;
  params.n = 20;
  params.m = 50;
  params.p = 10;
  params.seed = 3;
  const MSProblem prob = gen_poplp(params);
  std::vector<double> x(prob.d, 0.5);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(prob.pieces[i % prob.pieces.size()], x));
    ++i;
  }
}
BENCHMARK(BM_PieceEvaluate);

void BM_OracleFullSolve(benchmark::State& state) {
  PoplpParams params;
  params.n = 10;
  params.m = 30;
  params.p = 8;
  params.seed = 5;
  const MSProblem prob = gen_poplp(params);
  const IndexSet full = IndexSet::full(prob.m());
  int piece = 0;
  for (auto _ : state) {
    // Fresh oracle per iteration; a cached solve would measure the map only.
    LpOracle oracle(prob, CostModel{1.0, 1.5});
    benchmark::DoNotOptimize(oracle.solve_piece(piece % prob.n(), full));
    ++piece;
  }
}
BENCHMARK(BM_OracleFullSolve);

void BM_SimStep(benchmark::State& state) {
  SimParams params;
  params.n = 100;
  params.m = 2000;
  params.theta_bar = 5.0;
  Rng rng(11);
  const AbstractInstance inst = make_instance(params, &rng);
  const CostModel cost = CostModel::matched(params.m, 1.5);
  std::uint64_t s = 0;
  for (auto _ : state) {
    Rng run(s++);
    benchmark::DoNotOptimize(
        sim_ulo(inst, cost, static_cast<int>(s % params.n), {}, &run));
  }
}
BENCHMARK(BM_SimStep);

}  // namespace

BENCHMARK_MAIN();
