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
// Subproblem oracles: minimize one piece over the domain restricted to a
// constraint subset. Results are memoized on (piece, constraint subset), so
// repeated queries return the identical stored object; the solvers rely on
// that identity for their exact termination arguments.

#ifndef MINSTRUCT_ORACLE_HPP_
#define MINSTRUCT_ORACLE_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "minstruct/problem.hpp"

namespace minstruct {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

struct OracleResult {
  SolveStatus status = SolveStatus::kOptimal;
  // +inf when infeasible, -inf when unbounded.
  double value = 0.0;
  std::vector<double> x_star;
  // Functional constraints of the queried subset tight at x_star.
  IndexSet active;
};

// Abstract solve cost in model-time units: time(s) = fixed_cost + s^exponent
// for a subproblem carrying s functional constraints.
struct CostModel {
  double fixed_cost = 0.0;
  double exponent = 1.5;

  double time(std::size_t s) const;

  // Fixed cost calibrated so that time(m) == 1000 * fixed_cost, i.e. the
  // full-constraint solve costs three orders of magnitude more than the
  // per-call overhead.
  static CostModel matched(std::size_t m, double exponent);
};

struct OracleStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  double model_time = 0.0;
};

// Memoizing base. Subclasses implement solve_uncached; every cache miss adds
// time(|S|) model-time units. Readers share the cache lock; insertion is
// exclusive. Map nodes are stable, so returned references stay valid.
class Oracle {
 public:
  Oracle(const MSProblem& problem, CostModel cost);
  virtual ~Oracle() = default;

  const MSProblem& problem() const { return problem_; }
  const CostModel& cost_model() const { return cost_; }

  // Minimize piece i over the domain restricted to constraint subset S.
  const OracleResult& solve_piece(int piece, const IndexSet& S);

  // Best piece over H under constraint subset S: the lowest-index argmin of
  // the per-piece solves. H must be nonempty.
  std::pair<int, const OracleResult*> solve_model(const IndexSet& H,
                                                  const IndexSet& S);

  OracleStats stats() const;

 protected:
  virtual OracleResult solve_uncached(int piece, const IndexSet& S) = 0;

 private:
  const MSProblem& problem_;
  CostModel cost_;
  mutable std::shared_mutex mutex_;
  std::map<std::pair<int, std::vector<int>>, OracleResult> cache_;
  std::atomic<std::uint64_t> hits_{0};
  std::uint64_t misses_ = 0;     // guarded by mutex_
  double model_time_ = 0.0;      // guarded by mutex_
};

}  // namespace minstruct

#endif  // MINSTRUCT_ORACLE_HPP_
