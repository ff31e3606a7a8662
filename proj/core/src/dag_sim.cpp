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

#include "minstruct/dag_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "minstruct/simplex.hpp"
#include "minstruct/solvers.hpp"
#include "minstruct/trace_io.hpp"

namespace minstruct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool reaches(const std::vector<std::vector<int>>& out, int from, int target) {
  if (from == target) return true;
  std::vector<int> stack{from};
  std::vector<bool> seen(out.size(), false);
  seen[from] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : out[v]) {
      if (w == target) return true;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace

std::vector<std::pair<int, int>> gen_dag(int n, double sigma_deg, Rng* rng) {
  if (n < 1) throw std::invalid_argument("gen_dag: n must be >= 1");
  if (sigma_deg < 0.0) throw std::invalid_argument("gen_dag: sigma_deg < 0");
  const long max_edges = static_cast<long>(n) * (n - 1) / 2;
  const long target = std::lround(sigma_deg * static_cast<double>(max_edges));

  std::vector<std::pair<int, int>> pool;
  pool.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) pool.emplace_back(i, j);
    }
  }
  std::vector<std::vector<int>> out(n);
  std::vector<std::pair<int, int>> edges;
  while (static_cast<long>(edges.size()) < target && !pool.empty()) {
    const std::size_t pick = rng->uniform_below(pool.size());
    const auto [a, b] = pool[pick];
    pool[pick] = pool.back();
    pool.pop_back();
    // Rejected pairs never return: adding them later could still only close
    // a cycle, since edges are never removed.
    if (reaches(out, b, a)) continue;
    out[a].push_back(b);
    edges.emplace_back(a, b);
  }
  return edges;
}

std::vector<std::vector<int>> sample_active_sets(int n, int m,
                                                 double sigma_act,
                                                 double upsilon, Rng* rng) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("sample_active_sets: n and m must be >= 1");
  }
  const int want = std::min<int>(
      m, std::max<long>(1, std::lround(sigma_act * static_cast<double>(m))));
  std::vector<std::vector<int>> sets(n);
  std::vector<int> remaining;
  std::vector<double> weight;
  for (int i = 0; i < n; ++i) {
    remaining.resize(m);
    for (int j = 0; j < m; ++j) remaining[j] = j;
    weight.resize(m);
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
      weight[j] = std::pow(static_cast<double>(j + 1), upsilon);
      total += weight[j];
    }
    std::vector<int>& set = sets[i];
    set.reserve(want);
    for (int k = 0; k < want; ++k) {
      const double u = rng->uniform01() * total;
      double acc = 0.0;
      std::size_t pick = remaining.size() - 1;
      for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
        acc += weight[idx];
        if (u < acc) {
          pick = idx;
          break;
        }
      }
      set.push_back(remaining[pick]);
      total -= weight[pick];
      remaining.erase(remaining.begin() + pick);
      weight.erase(weight.begin() + pick);
    }
    std::sort(set.begin(), set.end());
  }
  return sets;
}

void assign_values(const std::vector<std::pair<int, int>>& edges, int n,
                   const SimParams& params, Rng* rng,
                   std::vector<double>* piece_value,
                   std::vector<double>* full_value_at_min) {
  std::vector<bool> has_out(n, false);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
      throw std::invalid_argument("assign_values: bad edge");
    }
    has_out[a] = true;
  }
  // Variables: piece values first, full-at-minimizer values second.
  // Maximize the value sum so gaps bind from above.
  for (int attempt = 0; attempt < 20; ++attempt) {
    LinearProgram lp;
    lp.num_vars = 2 * static_cast<std::size_t>(n);
    lp.objective.assign(lp.num_vars, 0.0);
    for (int i = 0; i < n; ++i) lp.objective[i] = -1.0;
    lp.lo.assign(lp.num_vars, -kInf);
    lp.hi.assign(lp.num_vars, kInf);
    for (int i = 0; i < n; ++i) lp.hi[i] = params.value_cap;
    const auto row = [&lp](std::initializer_list<std::pair<int, double>> t,
                           double b) {
      std::vector<double> a(lp.num_vars, 0.0);
      for (const auto& [idx, c] : t) a[idx] = c;
      lp.ineq_a.push_back(std::move(a));
      lp.ineq_b.push_back(b);
    };
    for (const auto& [a, b] : edges) {
      const double gap = rng->exponential(params.theta);
      // target value <= source value - gap, and strictly below the source's
      // full value at its minimizer.
      row({{b, 1.0}, {a, -1.0}}, -gap);
      row({{b, 1.0}, {n + a, -1.0}}, -params.strict_margin);
    }
    for (int i = 0; i < n; ++i) {
      // Full value never exceeds the piece's own value; sinks are equal.
      row({{n + i, 1.0}, {i, -1.0}}, 0.0);
      if (!has_out[i]) {
        std::vector<double> a(lp.num_vars, 0.0);
        a[i] = 1.0;
        a[n + i] = -1.0;
        lp.eq_a.push_back(std::move(a));
        lp.eq_b.push_back(0.0);
      }
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::kOptimal) {
      piece_value->assign(sol.x.begin(), sol.x.begin() + n);
      full_value_at_min->assign(sol.x.begin() + n, sol.x.end());
      return;
    }
    if (sol.status == LpStatus::kIterationLimit) {
      throw std::runtime_error("assign_values: simplex iteration cap");
    }
    // Infeasible or unbounded: redraw the gaps.
  }
  throw std::runtime_error("assign_values: no consistent values found");
}

AbstractInstance make_instance(const SimParams& params, Rng* rng) {
  AbstractInstance inst;
  inst.params = params;
  inst.edges = gen_dag(params.n, params.sigma_deg, rng);
  inst.out_neighbors.assign(params.n, {});
  for (const auto& [a, b] : inst.edges) inst.out_neighbors[a].push_back(b);
  inst.active_sets = sample_active_sets(params.n, params.m, params.sigma_act,
                                        params.upsilon, rng);
  assign_values(inst.edges, params.n, params, rng, &inst.piece_value,
                &inst.full_value_at_min);
  inst.bound_slack.resize(params.n);
  for (int i = 0; i < params.n; ++i) {
    inst.bound_slack[i] = rng->exponential(params.theta_bar);
  }
  return inst;
}

int check_dag_assumption(const AbstractInstance& inst, double tol) {
  int violations = 0;
  for (const auto& [a, b] : inst.edges) {
    if (inst.piece_value[b] > inst.piece_value[a] + tol ||
        inst.piece_value[b] > inst.full_value_at_min[a] + tol) {
      ++violations;
    }
  }
  return violations;
}

double sim_lower_bound(const AbstractInstance& inst, int piece, int overlap,
                       int subset_size) {
  const auto& set = inst.active_sets[piece];
  const double missing =
      1.0 - static_cast<double>(overlap) / static_cast<double>(set.size());
  const double coverage = std::pow(
      1.0 - static_cast<double>(subset_size) / inst.params.m, 1.5);
  return inst.piece_value[piece] -
         std::min(missing, coverage) * inst.bound_slack[piece];
}

SimReport sim_ulo(const AbstractInstance& inst, const CostModel& cost,
                  int start_piece, const SimTolerances& tol, Rng* rng) {
  const int n = inst.n();
  const int m = inst.m();
  if (start_piece < 0 || start_piece >= n) {
    throw std::invalid_argument("sim_ulo: start piece out of range");
  }
  SimReport rep;
  rep.f_hat = kInf;
  rep.f_check = -kInf;

  std::vector<bool> visited(n, false);
  int visited_count = 0;
  std::vector<bool> in_subset(m, false);
  int subset_size = 0;

  int suggested = start_piece;
  for (int k = 1;; ++k) {
    // Descent phase on the DAG: a full solve of a piece lands on its
    // minimizer, whose near-active pieces are the out-neighbors.
    std::vector<int> frontier{suggested};
    double walk_best = kInf;
    int accepted = -1;
    while (!frontier.empty()) {
      const int pick = frontier[rng->uniform_below(frontier.size())];
      rep.gamma += cost.time(m);
      visited[pick] = true;
      ++visited_count;
      if (inst.piece_value[pick] >= walk_best - tol.value_tol) {
        frontier.erase(std::find(frontier.begin(), frontier.end(), pick));
        continue;
      }
      walk_best = inst.full_value_at_min[pick];
      accepted = pick;
      frontier.clear();
      for (int w : inst.out_neighbors[pick]) {
        if (!visited[w]) frontier.push_back(w);
      }
      rep.f_hat = std::min(rep.f_hat, walk_best);
    }
    rep.iterations = k;
    if (converged(rep.f_hat, rep.f_check, tol.eps, tol.eps_rel)) break;

    // Certificate phase.
    for (int j : inst.active_sets[accepted]) {
      if (!in_subset[j]) {
        in_subset[j] = true;
        ++subset_size;
      }
    }
    if (subset_size < m) {
      std::vector<int> unseen;
      unseen.reserve(m - subset_size);
      for (int j = 0; j < m; ++j) {
        if (!in_subset[j]) unseen.push_back(j);
      }
      in_subset[unseen[rng->uniform_below(unseen.size())]] = true;
      ++subset_size;
    }
    rep.history.emplace_back(visited_count, subset_size);
    double best = kInf;
    int sugg = -1;
    for (int i = 0; i < n; ++i) {
      double v;
      if (visited[i]) {
        v = inst.piece_value[i];
      } else {
        int overlap = 0;
        for (int j : inst.active_sets[i]) {
          if (in_subset[j]) ++overlap;
        }
        v = sim_lower_bound(inst, i, overlap, subset_size);
        rep.gamma += cost.time(subset_size);
      }
      if (v < best) {
        best = v;
        sugg = i;
      }
    }
    if (visited[sugg]) {
      rep.f_check = std::max(rep.f_check, rep.f_hat);
      rep.certified = true;
      break;
    }
    rep.f_check = std::max(rep.f_check, best);
    if (converged(rep.f_hat, rep.f_check, tol.eps, tol.eps_rel)) break;
    suggested = sugg;
    if (k > n + 2) {
      throw std::logic_error("sim_ulo: iteration bound exceeded");
    }
  }
  rep.visited_count = visited_count;
  return rep;
}

SimEnumeration sim_enumeration(const AbstractInstance& inst,
                               const CostModel& cost) {
  SimEnumeration out;
  out.f_star = *std::min_element(inst.piece_value.begin(),
                                 inst.piece_value.end());
  out.gamma = gamma_enumeration(inst.n(), cost, inst.m());
  return out;
}

double gamma_enumeration(int k, const CostModel& cost, int m) {
  return static_cast<double>(k) * cost.time(m);
}

int union_active_size(const AbstractInstance& inst) {
  std::vector<bool> seen(inst.m(), false);
  int count = 0;
  for (const auto& set : inst.active_sets) {
    for (int j : set) {
      if (!seen[j]) {
        seen[j] = true;
        ++count;
      }
    }
  }
  return count;
}

std::vector<SimGridRow> run_grid(const SimGridConfig& config) {
  std::vector<SimGridRow> rows;
  Rng root(config.seed);
  CostModel cost = config.cost;
  if (cost.fixed_cost < 0.0) {
    cost = CostModel::matched(config.m, cost.exponent);
  }
  const double ges_n = gamma_enumeration(config.n, cost, config.m);
  std::uint64_t job = 0;
  for (double theta_bar : config.theta_bar_values) {
    for (double upsilon : config.upsilon_values) {
      for (double sigma_deg : config.sigma_deg_values) {
        for (int inst_id = 0; inst_id < config.instances; ++inst_id) {
          Rng rng_inst = root.split(job++);
          SimParams params;
          params.n = config.n;
          params.m = config.m;
          params.sigma_act = config.sigma_act;
          params.sigma_deg = sigma_deg;
          params.upsilon = upsilon;
          params.theta = config.theta;
          params.theta_bar = theta_bar;
          params.value_cap = config.value_cap;
          params.strict_margin = config.strict_margin;
          const AbstractInstance inst = make_instance(params, &rng_inst);
          const int ua = union_active_size(inst);
          for (int s = 0; s < config.starts; ++s) {
            const int start =
                static_cast<int>(rng_inst.uniform_below(config.n));
            Rng rng_run = rng_inst.split(1000000 + s);
            const SimReport rep =
                sim_ulo(inst, cost, start, config.tol, &rng_run);
            SimGridRow row;
            row.theta_bar = theta_bar;
            row.upsilon = upsilon;
            row.sigma_deg = sigma_deg;
            row.instance_id = inst_id;
            row.start_piece = start;
            row.iterations = rep.iterations;
            row.gamma_ulo = rep.gamma;
            row.gamma_es_n = ges_n;
            row.cost_ratio = rep.gamma / ges_n;
            row.union_active = ua;
            rows.push_back(row);
          }
        }
      }
    }
  }
  return rows;
}

void write_grid_csv(std::ostream& out, const std::vector<SimGridRow>& rows) {
  out << kGridCsvHeader << "\n";
  for (const SimGridRow& r : rows) {
    out << format_double(r.theta_bar) << ',' << format_double(r.upsilon)
        << ',' << format_double(r.sigma_deg) << ',' << r.instance_id << ','
        << r.start_piece << ',' << r.iterations << ','
        << format_double(r.gamma_ulo) << ',' << format_double(r.gamma_es_n)
        << ',' << format_double(r.cost_ratio) << ',' << r.union_active
        << "\n";
  }
}

std::vector<SimCellSummary> summarize_grid(
    const std::vector<SimGridRow>& rows) {
  std::vector<SimCellSummary> cells;
  for (const SimGridRow& r : rows) {
    SimCellSummary* cell = nullptr;
    for (SimCellSummary& c : cells) {
      if (c.theta_bar == r.theta_bar && c.upsilon == r.upsilon &&
          c.sigma_deg == r.sigma_deg) {
        cell = &c;
        break;
      }
    }
    if (cell == nullptr) {
      cells.push_back({r.theta_bar, r.upsilon, r.sigma_deg, 0, 0.0, 0.0,
                       0.0, 0.0});
      cell = &cells.back();
    }
    ++cell->runs;
    cell->mean_ratio += r.cost_ratio;
    cell->mean_log10_ratio += std::log10(r.cost_ratio);
    cell->mean_union_active += r.union_active;
    cell->mean_iterations += r.iterations;
  }
  for (SimCellSummary& c : cells) {
    c.mean_ratio /= c.runs;
    c.mean_log10_ratio /= c.runs;
    c.mean_union_active /= c.runs;
    c.mean_iterations /= c.runs;
  }
  return cells;
}

void write_grid_summary_csv(std::ostream& out,
                            const std::vector<SimCellSummary>& cells) {
  out << "theta_bar,upsilon_param,sigma_deg,runs,mean_upsilon_ratio,"
         "mean_log10_upsilon_ratio,mean_union_active_size,mean_K\n";
  for (const SimCellSummary& c : cells) {
    out << format_double(c.theta_bar) << ',' << format_double(c.upsilon)
        << ',' << format_double(c.sigma_deg) << ',' << c.runs << ','
        << format_double(c.mean_ratio) << ','
        << format_double(c.mean_log10_ratio) << ','
        << format_double(c.mean_union_active) << ','
        << format_double(c.mean_iterations) << "\n";
  }
}

}  // namespace minstruct
