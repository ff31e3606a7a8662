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

#include "minstruct/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minstruct {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

bool converged(double f_hat, double f_check, double eps, double eps_rel) {
  if (!std::isfinite(f_hat) || !std::isfinite(f_check)) return false;
  const double threshold =
      std::max(eps, std::max(1.0, std::abs(f_hat)) * eps_rel);
  return f_hat - f_check <= threshold;
}

UloState init_state() {
  UloState s;
  s.f_hat = kInf;
  s.f_check = -kInf;
  return s;
}

RunClock RunClock::begin(double limit_s) {
  return {std::chrono::steady_clock::now(), limit_s};
}

double RunClock::elapsed_s() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

bool RunClock::expired() const {
  return limit_s > 0.0 && elapsed_s() >= limit_s;
}

PhaseAResult phase_a(const MSProblem& p, Oracle* oracle, int suggested,
                     UloState* state, Rng* rng, const SolverConfig& cfg,
                     const RunClock* clock,
                     const std::function<void()>& on_improvement) {
  if (suggested < 0 || suggested >= p.n()) {
    throw std::invalid_argument("phase_a: suggested piece out of range");
  }
  if (state->visited.contains(suggested)) {
    throw std::invalid_argument("phase_a: suggested piece already visited");
  }
  const IndexSet full = IndexSet::full(p.m());

  PhaseAResult res;
  std::vector<int> frontier{suggested};
  double walk_best = kInf;  // full objective at the last accepted minimizer
  std::vector<double> x_walk;
  bool has_x_walk = false;

  while (!frontier.empty()) {
    if (clock != nullptr && clock->expired()) {
      res.timed_out = true;
      break;
    }
    const int pick =
        frontier[rng->uniform_below(frontier.size())];
    const OracleResult& r = oracle->solve_piece(pick, full);
    if (r.status == SolveStatus::kInfeasible) {
      throw std::runtime_error(
          "phase_a: domain is empty (full subproblem infeasible)");
    }
    if (r.status == SolveStatus::kUnbounded) {
      throw std::runtime_error(
          "phase_a: piece " + std::to_string(pick) +
          " is unbounded below on the domain (ill-posed instance)");
    }
    state->visited.insert(pick);
    if (r.value >= walk_best - cfg.value_tol) {
      frontier.erase(std::find(frontier.begin(), frontier.end(), pick));
      continue;
    }
    // Accept: jump to this piece's minimizer.
    if (!feasible(p, r.x_star, full, cfg.feasibility_tol)) {
      throw std::runtime_error(
          "phase_a: oracle returned an infeasible minimizer for piece " +
          std::to_string(pick));
    }
    const double f_new = min_piece_value(p, r.x_star).first;
    if (has_x_walk) {
      // Descent chain: the new full value sits below the solved piece's
      // optimum, which sits below that piece's value at the previous point,
      // which was near-active there.
      const double f_pick_prev = evaluate(p.pieces[pick], x_walk);
      const bool ok =
          f_new <= r.value + cfg.value_tol &&
          r.value <= f_pick_prev + cfg.value_tol &&
          f_pick_prev <= walk_best + cfg.rho + cfg.value_tol;
      if (!ok) ++state->descent_violations;
    }
    x_walk = r.x_star;
    has_x_walk = true;
    walk_best = f_new;
    res.accepted_piece = pick;
    const IndexSet near = active_pieces(p, r.x_star, cfg.rho);
    frontier.clear();
    for (int i : near) {
      if (!state->visited.contains(i)) frontier.push_back(i);
    }
    if (f_new < state->f_hat) {
      state->f_hat = f_new;
      state->x_best = r.x_star;
      state->incumbent_piece = pick;
      if (on_improvement) on_improvement();
    }
  }
  return res;
}

PhaseBResult phase_b(const MSProblem& p, Oracle* oracle, int accepted,
                     UloState* state, Rng* rng, const SolverConfig& cfg,
                     const RunClock* clock) {
  if (accepted < 0 || accepted >= p.n()) {
    throw std::invalid_argument("phase_b: accepted piece out of range");
  }
  if (!state->visited.contains(accepted)) {
    throw std::invalid_argument("phase_b: accepted piece was never visited");
  }
  (void)cfg;
  const IndexSet full = IndexSet::full(p.m());

  PhaseBResult res;
  // Grow the subset: tight constraints at the accepted minimizer (a cache
  // hit) plus one random constraint not yet selected.
  const OracleResult& ra = oracle->solve_piece(accepted, full);
  state->subset.insert_all(ra.active);
  const std::vector<int> unseen = state->subset.complement(p.m());
  if (!unseen.empty()) {
    state->subset.insert(unseen[rng->uniform_below(unseen.size())]);
  }

  // Price every piece: full value if visited, relaxed bound otherwise.
  double best = kInf;
  int suggestion = -1;
  for (int i = 0; i < p.n(); ++i) {
    if (clock != nullptr && clock->expired()) {
      res.timed_out = true;
      return res;
    }
    const bool is_visited = state->visited.contains(i);
    const OracleResult& r =
        oracle->solve_piece(i, is_visited ? full : state->subset);
    if (r.value < best) {
      best = r.value;
      suggestion = i;
    }
  }
  if (suggestion == -1) {
    throw std::runtime_error(
        "phase_b: every relaxed subproblem is infeasible");
  }
  res.suggestion = suggestion;
  res.bound = best;
  res.exact = state->visited.contains(suggestion);
  if (res.exact) {
    // The suggestion's relaxed bound equals its full value, so the incumbent
    // is globally optimal; close the certificate at the incumbent value.
    state->f_check = std::max(state->f_check, state->f_hat);
  } else {
    state->f_check = std::max(state->f_check, best);
  }
  return res;
}

namespace {

struct Emitter {
  std::vector<TraceEvent>* trace;
  Oracle* oracle;
  const RunClock* clock;
  const UloState* state;
  const int* k;

  void operator()(TraceKind kind) const {
    TraceEvent e;
    e.t_wall_s = clock->elapsed_s();
    e.t_model = oracle->stats().model_time;
    e.k = *k;
    e.f_hat = state->f_hat;
    e.f_check = state->f_check;
    e.kind = kind;
    trace->push_back(e);
  }
};

SolveReport finish(SolveReport report, const UloState& state, int iterations,
                   ExitStatus status) {
  report.status = status;
  report.f_hat = state.f_hat;
  report.f_check = state.f_check;
  report.x_best = state.x_best;
  report.incumbent_piece = state.incumbent_piece;
  report.iterations = iterations;
  report.descent_violations = state.descent_violations;
  report.visited = state.visited;
  report.subset = state.subset;
  return report;
}

}  // namespace

SolveReport ulo(const MSProblem& p, Oracle* oracle, int start_piece,
                const SolverConfig& cfg) {
  validate_problem(p);
  if (start_piece < 0 || start_piece >= p.n()) {
    throw std::invalid_argument("ulo: start piece out of range");
  }
  const RunClock clock = RunClock::begin(cfg.time_limit_s);
  Rng rng(cfg.seed);
  UloState state = init_state();
  SolveReport report;
  int k = 1;
  const Emitter emit{&report.trace, oracle, &clock, &state, &k};

  int suggested = start_piece;
  int completed = 0;
  for (;;) {
    const PhaseAResult pa = phase_a(p, oracle, suggested, &state, &rng, cfg,
                                    &clock, [&emit] {
                                      emit(TraceKind::kUpperImproved);
                                    });
    emit(TraceKind::kPhaseAEnd);
    if (pa.timed_out) {
      emit(TraceKind::kExit);
      return finish(std::move(report), state, completed,
                    ExitStatus::kTimeLimit);
    }
    if (converged(state.f_hat, state.f_check, cfg.eps, cfg.eps_rel)) {
      completed = k;
      emit(TraceKind::kExit);
      return finish(std::move(report), state, completed,
                    ExitStatus::kGapSatisfied);
    }
    const PhaseBResult pb =
        phase_b(p, oracle, pa.accepted_piece, &state, &rng, cfg, &clock);
    report.history.emplace_back(state.visited.size(), state.subset.size());
    if (pb.timed_out) {
      emit(TraceKind::kExit);
      return finish(std::move(report), state, completed,
                    ExitStatus::kTimeLimit);
    }
    emit(TraceKind::kLowerImproved);
    emit(TraceKind::kPhaseBEnd);
    completed = k;
    if (pb.exact) {
      emit(TraceKind::kExit);
      return finish(std::move(report), state, completed,
                    ExitStatus::kCertifiedOptimal);
    }
    if (converged(state.f_hat, state.f_check, cfg.eps, cfg.eps_rel)) {
      emit(TraceKind::kExit);
      return finish(std::move(report), state, completed,
                    ExitStatus::kGapSatisfied);
    }
    suggested = pb.suggestion;
    ++k;
    if (k > p.n() + 2) {
      // The descent phase adds at least one visited piece per iteration, so
      // this cannot trigger unless state handling is broken.
      throw std::logic_error("ulo: iteration bound exceeded");
    }
  }
}

SolveReport enumerate_pieces(const MSProblem& p, Oracle* oracle,
                             const SolverConfig& cfg) {
  validate_problem(p);
  const RunClock clock = RunClock::begin(cfg.time_limit_s);
  Rng rng(cfg.seed);
  UloState state = init_state();
  SolveReport report;
  int k = 0;
  const Emitter emit{&report.trace, oracle, &clock, &state, &k};
  const IndexSet full = IndexSet::full(p.m());

  // Seeded uniform order of the pieces.
  std::vector<int> order(p.n());
  for (int i = 0; i < p.n(); ++i) order[i] = i;
  for (int i = p.n() - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_below(i + 1));
    std::swap(order[i], order[j]);
  }

  for (const int piece : order) {
    if (clock.expired()) {
      emit(TraceKind::kExit);
      return finish(std::move(report), state, k, ExitStatus::kTimeLimit);
    }
    const double before = clock.elapsed_s();
    const OracleResult& r = oracle->solve_piece(piece, full);
    const double wall = clock.elapsed_s() - before;
    ++k;
    if (r.status == SolveStatus::kInfeasible) {
      throw std::runtime_error(
          "enumerate_pieces: domain is empty (full subproblem infeasible)");
    }
    if (r.status == SolveStatus::kUnbounded) {
      throw std::runtime_error(
          "enumerate_pieces: piece " + std::to_string(piece) +
          " is unbounded below on the domain (ill-posed instance)");
    }
    state.visited.insert(piece);
    report.per_piece.push_back({piece, wall, r.value});
    if (r.value < state.f_hat) {
      state.f_hat = r.value;
      state.x_best = r.x_star;
      state.incumbent_piece = piece;
      emit(TraceKind::kUpperImproved);
    }
  }
  // Exhaustion is the certificate.
  state.f_check = state.f_hat;
  emit(TraceKind::kLowerImproved);
  emit(TraceKind::kExit);
  return finish(std::move(report), state, k, ExitStatus::kCertifiedOptimal);
}

SolveReport restarted_local(const MSProblem& p, Oracle* oracle,
                            const SolverConfig& cfg, int restart_budget,
                            int first_start) {
  validate_problem(p);
  if (restart_budget < 1) {
    throw std::invalid_argument("restarted_local: budget must be >= 1");
  }
  if (first_start >= p.n()) {
    throw std::invalid_argument("restarted_local: first start out of range");
  }
  const RunClock clock = RunClock::begin(cfg.time_limit_s);
  Rng rng(cfg.seed);
  UloState state = init_state();
  SolveReport report;
  int k = 1;
  const Emitter emit{&report.trace, oracle, &clock, &state, &k};

  int restarts = 0;
  while (restarts < restart_budget) {
    const std::vector<int> unvisited = state.visited.complement(p.n());
    if (unvisited.empty()) break;
    const int start = (restarts == 0 && first_start >= 0)
                          ? first_start
                          : unvisited[rng.uniform_below(unvisited.size())];
    const PhaseAResult pa = phase_a(p, oracle, start, &state, &rng, cfg,
                                    &clock, [&emit] {
                                      emit(TraceKind::kUpperImproved);
                                    });
    emit(TraceKind::kPhaseAEnd);
    ++restarts;
    if (pa.timed_out) {
      emit(TraceKind::kExit);
      return finish(std::move(report), state, restarts,
                    ExitStatus::kTimeLimit);
    }
    k = restarts + 1;
  }
  k = restarts;
  if (state.visited.size() == p.n()) {
    // Every piece has been solved at the full constraint set.
    state.f_check = state.f_hat;
    emit(TraceKind::kLowerImproved);
    emit(TraceKind::kExit);
    return finish(std::move(report), state, restarts,
                  ExitStatus::kCertifiedOptimal);
  }
  emit(TraceKind::kExit);
  return finish(std::move(report), state, restarts,
                ExitStatus::kBudgetExhausted);
}

}  // namespace minstruct
