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
// Global solvers for min-structured problems.
//
// ulo() alternates two phases. The descent phase walks across near-active
// pieces: it fully minimizes one piece, jumps to that minimizer, and repeats
// until no unvisited near-active piece improves the incumbent; every full
// solve improves the upper bound. The certificate phase grows a small
// constraint subset (tight constraints at the last accepted minimizer plus
// one random extra), prices every unvisited piece against that subset to get
// per-piece lower bounds, and suggests the piece with the least bound. When
// the suggestion has already been visited, its relaxed bound coincides with
// its full value and the incumbent is optimal.
//
// enumerate_pieces() is the exhaustive baseline (one full solve per piece in
// seeded random order); restarted_local() repeats the descent phase from
// random unvisited pieces and certifies only on exhaustion.

#ifndef MINSTRUCT_SOLVERS_HPP_
#define MINSTRUCT_SOLVERS_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "minstruct/oracle.hpp"
#include "minstruct/problem.hpp"
#include "minstruct/rng.hpp"

namespace minstruct {

struct SolverConfig {
  double rho = 1e-3;        // near-activity margin for the descent walk
  double eps = 1e-3;        // absolute gap target
  double eps_rel = 5e-2;    // relative gap target, scaled by max(1, |upper|)
  double feasibility_tol = 1e-6;
  double value_tol = 1e-6;  // slack in value comparisons (walk acceptance)
  double time_limit_s = 0.0;  // <= 0 disables the limit
  std::uint64_t seed = 0;
};

// Gap test used by every exit decision; infinite bounds never converge.
bool converged(double f_hat, double f_check, double eps, double eps_rel);

enum class TraceKind {
  kUpperImproved,
  kLowerImproved,
  kPhaseAEnd,
  kPhaseBEnd,
  kExit,
};

struct TraceEvent {
  double t_wall_s = 0.0;
  double t_model = 0.0;
  int k = 0;
  double f_hat = 0.0;
  double f_check = 0.0;
  TraceKind kind = TraceKind::kExit;
};

enum class ExitStatus {
  kCertifiedOptimal,   // exact certificate (suggestion already visited,
                       // or every piece solved at full constraints)
  kGapSatisfied,       // upper/lower gap within tolerance
  kBudgetExhausted,    // restart budget spent without a certificate
  kTimeLimit,
};

// Mutable solver state shared by the two phases.
struct UloState {
  IndexSet visited;           // pieces solved at the full constraint set
  IndexSet subset;            // grown constraint subset
  double f_hat = 0.0;         // set by init_state
  double f_check = 0.0;
  std::vector<double> x_best;
  int incumbent_piece = -1;
  // Count of descent-chain checks that failed beyond value_tol; a nonzero
  // count indicates an oracle inconsistency.
  long descent_violations = 0;
};

UloState init_state();

struct RunClock {
  std::chrono::steady_clock::time_point start;
  double limit_s = 0.0;

  static RunClock begin(double limit_s);
  double elapsed_s() const;
  bool expired() const;
};

struct PhaseAResult {
  int accepted_piece = -1;  // last accepted piece, -1 only on early timeout
  bool timed_out = false;
};

// Descent phase starting from an unvisited suggested piece. Updates
// visited/f_hat/x_best/incumbent_piece; invokes on_improvement after each
// incumbent improvement. Throws when a full-constraint subproblem reports
// infeasible (empty domain) or unbounded (ill-posed instance).
PhaseAResult phase_a(const MSProblem& p, Oracle* oracle, int suggested,
                     UloState* state, Rng* rng, const SolverConfig& cfg,
                     const RunClock* clock = nullptr,
                     const std::function<void()>& on_improvement = {});

struct PhaseBResult {
  int suggestion = -1;
  double bound = 0.0;   // least per-piece lower bound this round
  bool exact = false;   // suggestion already visited: certificate
  bool timed_out = false;
};

// Certificate phase: grows the subset with the constraints tight at the
// accepted piece's minimizer plus one random unseen constraint, then prices
// every piece. Updates subset/f_check.
PhaseBResult phase_b(const MSProblem& p, Oracle* oracle, int accepted,
                     UloState* state, Rng* rng, const SolverConfig& cfg,
                     const RunClock* clock = nullptr);

struct SolveReport {
  ExitStatus status = ExitStatus::kBudgetExhausted;
  double f_hat = 0.0;
  double f_check = 0.0;
  std::vector<double> x_best;
  int incumbent_piece = -1;
  int iterations = 0;  // outer iterations / solves / restarts
  long descent_violations = 0;
  IndexSet visited;
  IndexSet subset;
  std::vector<TraceEvent> trace;
  // Visited-piece and subset sizes per outer iteration (ulo only).
  std::vector<std::pair<int, int>> history;
  // Per-solve samples in execution order (enumerate_pieces only).
  struct EsSample {
    int piece = 0;
    double wall_s = 0.0;
    double value = 0.0;
  };
  std::vector<EsSample> per_piece;
};

SolveReport ulo(const MSProblem& p, Oracle* oracle, int start_piece,
                const SolverConfig& cfg);

SolveReport enumerate_pieces(const MSProblem& p, Oracle* oracle,
                             const SolverConfig& cfg);

// first_start >= 0 pins the initial restart piece; later restarts draw
// uniformly from the unvisited pieces.
SolveReport restarted_local(const MSProblem& p, Oracle* oracle,
                            const SolverConfig& cfg, int restart_budget,
                            int first_start = -1);

}  // namespace minstruct

#endif  // MINSTRUCT_SOLVERS_HPP_
