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

#include "minstruct/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "minstruct/lp_oracle.hpp"
#include "minstruct/problem_io.hpp"
#include "minstruct/ref_oracle.hpp"
#include "minstruct/rng.hpp"
#include "minstruct/svg.hpp"
#include "minstruct/trace_io.hpp"

namespace minstruct {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_plan(const BenchPlan& plan) {
  if (plan.problem_file.empty()) {
    throw std::invalid_argument("bench plan: missing problem file");
  }
  if (plan.algos.empty()) {
    throw std::invalid_argument("bench plan: no algorithms selected");
  }
  for (const std::string& a : plan.algos) {
    if (a != "ulo" && a != "es" && a != "ram") {
      throw std::invalid_argument("bench plan: unknown algorithm " + a);
    }
  }
  if (plan.n_rep < 1) {
    throw std::invalid_argument("bench plan: n_rep must be >= 1");
  }
  if (plan.es_permutations < 1) {
    throw std::invalid_argument("bench plan: es_permutations must be >= 1");
  }
  double prev = 0.0;
  for (double t : plan.timestamps) {
    if (!(t > prev)) {
      throw std::invalid_argument(
          "bench plan: timestamps must be positive and strictly increasing");
    }
    prev = t;
  }
}

std::string run_file(const std::string& algo, int rep) {
  std::ostringstream s;
  s << "trace_" << algo << "_r" << rep << ".csv";
  return s.str();
}

}  // namespace

std::vector<double> geometric_timestamps(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("geometric_timestamps: need 0 < lo < hi and "
                                "count >= 2");
  }
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

BenchPlan load_bench_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("bench plan: cannot open " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bench plan: bad JSON: ") +
                                e.what());
  }
  BenchPlan plan;
  try {
    plan.problem_file = doc.at("problem").get<std::string>();
    if (doc.contains("algos")) {
      plan.algos = doc["algos"].get<std::vector<std::string>>();
    }
    plan.n_rep = doc.value("n_rep", plan.n_rep);
    plan.time_limit_s = doc.value("time_limit_s", plan.time_limit_s);
    plan.es_permutations =
        doc.value("es_permutations", plan.es_permutations);
    plan.seed = doc.value("seed", plan.seed);
    if (doc.contains("timestamps")) {
      plan.timestamps = doc["timestamps"].get<std::vector<double>>();
    }
    if (doc.contains("starts")) {
      plan.starts = doc["starts"].get<std::vector<int>>();
    }
    plan.oracle = doc.value("oracle", plan.oracle);
    plan.rho = doc.value("rho", plan.rho);
    plan.eps = doc.value("eps", plan.eps);
    plan.eps_rel = doc.value("eps_rel", plan.eps_rel);
    plan.ram_budget = doc.value("ram_budget", plan.ram_budget);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bench plan: bad field: ") +
                                e.what());
  }
  if (plan.timestamps.empty()) {
    plan.timestamps = geometric_timestamps(
        0.05, std::max(plan.time_limit_s, 0.1), 24);
  }
  check_plan(plan);
  return plan;
}

std::unique_ptr<Oracle> make_oracle(const MSProblem& p,
                                    const std::string& kind, CostModel cost) {
  if (cost.fixed_cost < 0.0) {
    cost = CostModel::matched(p.m(), cost.exponent);
  }
  if (kind == "lp") {
    return std::make_unique<LpOracle>(p, cost);
  }
  if (kind == "ref") {
    return std::make_unique<RefOracle>(p, cost);
  }
  if (kind == "auto") {
    if (LpOracle::representable(p)) {
      return std::make_unique<LpOracle>(p, cost);
    }
    return std::make_unique<RefOracle>(p, cost);
  }
  throw std::invalid_argument("unknown oracle kind: " + kind);
}

std::vector<std::vector<StepPoint>> es_resample(
    const std::vector<double>& times, const std::vector<double>& values,
    std::uint64_t seed, int count) {
  if (times.size() != values.size()) {
    throw std::invalid_argument("es_resample: list length mismatch");
  }
  const std::size_t n = times.size();
  Rng rng(seed);
  std::vector<std::vector<StepPoint>> out;
  out.reserve(count);
  std::vector<std::size_t> perm(n);
  for (int c = 0; c < count; ++c) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[rng.uniform_below(i)]);
    }
    std::vector<StepPoint> trace(n);
    double t = 0.0;
    double best = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      t += times[perm[k]];
      best = std::min(best, values[perm[k]]);
      trace[k] = {t, best};
    }
    out.push_back(std::move(trace));
  }
  return out;
}

std::vector<AggregateRow> aggregate(
    const std::vector<std::vector<TraceEvent>>& traces,
    const std::vector<double>& timestamps) {
  std::vector<AggregateRow> rows;
  rows.reserve(timestamps.size());
  for (double tau : timestamps) {
    AggregateRow row;
    row.tau = tau;
    double sum_hat = 0.0;
    double sum_check = 0.0;
    for (const auto& trace : traces) {
      const TraceEvent* last = nullptr;
      for (const TraceEvent& e : trace) {
        if (e.t_wall_s <= tau) {
          last = &e;
        } else {
          break;
        }
      }
      if (last == nullptr) continue;
      ++row.coverage;
      sum_hat += last->f_hat;
      sum_check += last->f_check;
    }
    if (row.coverage > 0) {
      row.mean_f_hat = sum_hat / row.coverage;
      row.mean_f_check = sum_check / row.coverage;
    } else {
      row.mean_f_hat = std::numeric_limits<double>::quiet_NaN();
      row.mean_f_check = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

BenchResult run_bench(const BenchPlan& plan, const std::string& out_dir) {
  check_plan(plan);
  const MSProblem problem = load_problem(plan.problem_file);
  const int n = problem.n();
  fs::create_directories(out_dir);

  Rng root(plan.seed);
  std::vector<int> starts = plan.starts;
  if (starts.empty()) {
    starts.resize(plan.n_rep);
    for (int r = 0; r < plan.n_rep; ++r) {
      starts[r] = static_cast<int>(root.uniform_below(n));
    }
  }
  for (int s : starts) {
    if (s < 0 || s >= n) {
      throw std::invalid_argument("bench plan: start piece out of range");
    }
  }

  BenchResult result;
  result.problem_name = problem.name;
  // Matched-rule cost keyed to this problem's constraint count.
  const CostModel cost{-1.0, 1.5};

  for (std::size_t a = 0; a < plan.algos.size(); ++a) {
    const std::string& algo = plan.algos[a];
    for (int rep = 0; rep < plan.n_rep; ++rep) {
      SolverConfig cfg;
      cfg.rho = plan.rho;
      cfg.eps = plan.eps;
      cfg.eps_rel = plan.eps_rel;
      cfg.time_limit_s = plan.time_limit_s;
      cfg.seed = root.split(1000 * (a + 1) + rep).next_u64();
      auto oracle = make_oracle(problem, plan.oracle, cost);
      SolveReport report;
      if (algo == "ulo") {
        report = ulo(problem, oracle.get(),
                     starts[rep % starts.size()], cfg);
      } else if (algo == "es") {
        report = enumerate_pieces(problem, oracle.get(), cfg);
      } else {
        const int budget = plan.ram_budget > 0 ? plan.ram_budget : n;
        report = restarted_local(problem, oracle.get(), cfg, budget,
                                 starts[rep % starts.size()]);
      }
      std::ostringstream run_id;
      run_id << problem.name << '-' << algo << "-r" << rep;
      save_trace_csv((fs::path(out_dir) / run_file(algo, rep)).string(),
                     run_id.str(), algo, cfg.seed, report.trace);
      if (algo == "es") {
        std::ofstream pieces(fs::path(out_dir) /
                             ("es_pieces_r" + std::to_string(rep) + ".csv"));
        pieces << "piece,wall_s,value\n";
        for (const auto& s : report.per_piece) {
          pieces << s.piece << ',' << format_double(s.wall_s) << ','
                 << format_double(s.value) << "\n";
        }
        if (report.status == ExitStatus::kCertifiedOptimal) {
          if (!result.have_f_star || report.f_hat < result.f_star) {
            result.have_f_star = true;
            result.f_star = report.f_hat;
          }
        }
      }
    }
  }

  json summary;
  summary["problem"] = problem.name;
  summary["problem_file"] = plan.problem_file;
  if (result.have_f_star) {
    summary["f_star"] = result.f_star;
  } else {
    summary["f_star"] = nullptr;
  }
  summary["algos"] = plan.algos;
  summary["n_rep"] = plan.n_rep;
  summary["seed"] = plan.seed;
  summary["time_limit_s"] = plan.time_limit_s;
  summary["es_permutations"] = plan.es_permutations;
  summary["timestamps"] = plan.timestamps;
  summary["starts"] = starts;
  std::ofstream out(fs::path(out_dir) / "summary.json");
  out << summary.dump(2) << "\n";
  return result;
}

namespace {

struct ReportInput {
  std::map<std::string, std::vector<std::vector<TraceEvent>>> traces;
  std::vector<std::string> es_piece_files;  // sorted
  std::vector<double> timestamps;
  int es_permutations = 1000;
  bool have_f_star = false;
  double f_star = 0.0;
};

ReportInput scan_bench_dir(const std::string& in_dir) {
  ReportInput input;
  if (!fs::is_directory(in_dir)) {
    throw std::invalid_argument("report: not a directory: " + in_dir);
  }
  std::vector<std::string> trace_files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && entry.path().extension() == ".csv") {
      trace_files.push_back(entry.path().string());
    } else if (name.rfind("es_pieces_", 0) == 0 &&
               entry.path().extension() == ".csv") {
      input.es_piece_files.push_back(entry.path().string());
    }
  }
  std::sort(trace_files.begin(), trace_files.end());
  std::sort(input.es_piece_files.begin(), input.es_piece_files.end());
  for (const std::string& file : trace_files) {
    const std::vector<TraceRow> rows = load_trace_csv(file);
    if (rows.empty()) continue;
    std::vector<TraceEvent> events;
    events.reserve(rows.size());
    for (const TraceRow& r : rows) events.push_back(r.event);
    input.traces[rows.front().algo].push_back(std::move(events));
  }
  const fs::path summary = fs::path(in_dir) / "summary.json";
  if (fs::exists(summary)) {
    std::ifstream in(summary);
    json doc;
    try {
      in >> doc;
      if (doc.contains("timestamps")) {
        input.timestamps = doc["timestamps"].get<std::vector<double>>();
      }
      input.es_permutations =
          doc.value("es_permutations", input.es_permutations);
      if (doc.contains("f_star") && !doc["f_star"].is_null()) {
        input.have_f_star = true;
        input.f_star = doc["f_star"].get<double>();
      }
    } catch (const json::exception& e) {
      throw std::invalid_argument(
          std::string("report: bad summary.json: ") + e.what());
    }
  }
  return input;
}

std::vector<std::vector<TraceEvent>> resampled_es_traces(
    const ReportInput& input) {
  std::vector<std::vector<TraceEvent>> traces;
  for (std::size_t f = 0; f < input.es_piece_files.size(); ++f) {
    std::ifstream in(input.es_piece_files[f]);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string piece, wall, value;
      if (!std::getline(ls, piece, ',') || !std::getline(ls, wall, ',') ||
          !std::getline(ls, value)) {
        throw std::invalid_argument("report: malformed per-piece row: " +
                                    line);
      }
      times.push_back(parse_double(wall));
      values.push_back(parse_double(value));
    }
    if (times.empty()) continue;
    const auto sampled =
        es_resample(times, values, 9000 + f, input.es_permutations);
    for (const auto& steps : sampled) {
      std::vector<TraceEvent> events;
      events.reserve(steps.size());
      for (std::size_t k = 0; k < steps.size(); ++k) {
        TraceEvent e;
        e.t_wall_s = steps[k].t;
        e.t_model = 0.0;
        e.k = static_cast<int>(k + 1);
        e.f_hat = steps[k].f_hat;
        // Exhaustion is the only enumeration certificate.
        e.f_check = (k + 1 == steps.size()) ? steps.back().f_hat : -kInf;
        e.kind = (k + 1 == steps.size()) ? TraceKind::kExit
                                         : TraceKind::kUpperImproved;
        events.push_back(e);
      }
      traces.push_back(std::move(events));
    }
  }
  return traces;
}

void write_summary_csv(const std::string& path,
                       const std::vector<AggregateRow>& rows) {
  std::ofstream out(path);
  out << "tau,mean_f_hat,mean_f_check,coverage\n";
  for (const AggregateRow& r : rows) {
    out << format_double(r.tau) << ',' << format_double(r.mean_f_hat) << ','
        << format_double(r.mean_f_check) << ',' << r.coverage << "\n";
  }
}

const char* algo_color(const std::string& algo) {
  if (algo == "ulo") return "#1f77b4";
  if (algo == "es") return "#d62728";
  if (algo == "ram") return "#2ca02c";
  return "#7f7f7f";
}

}  // namespace

void write_report(const std::string& in_dir, const ReportOptions& options,
                  const std::string& out_dir) {
  ReportInput input = scan_bench_dir(in_dir);
  if (!input.es_piece_files.empty()) {
    auto resampled = resampled_es_traces(input);
    if (!resampled.empty()) {
      input.traces["es"] = std::move(resampled);
    }
  }
  if (input.traces.empty()) {
    throw std::invalid_argument("report: no traces found in " + in_dir);
  }
  double max_t = 0.0;
  for (const auto& [algo, traces] : input.traces) {
    for (const auto& trace : traces) {
      if (!trace.empty()) max_t = std::max(max_t, trace.back().t_wall_s);
    }
  }
  if (input.timestamps.empty()) {
    input.timestamps =
        geometric_timestamps(0.05, std::max(max_t, 0.1), 24);
  }
  bool have_f_star = options.have_f_star;
  double f_star = options.f_star;
  if (!have_f_star && options.auto_f_star && input.have_f_star) {
    have_f_star = true;
    f_star = input.f_star;
  }

  fs::create_directories(out_dir);
  std::vector<ChartSeries> primal;
  std::vector<ChartSeries> certified;
  for (const auto& [algo, traces] : input.traces) {
    const std::vector<AggregateRow> rows =
        aggregate(traces, input.timestamps);
    write_summary_csv(
        (fs::path(out_dir) / ("summary_" + algo + ".csv")).string(), rows);
    ChartSeries sp{algo, algo_color(algo), {}};
    ChartSeries sc{algo, algo_color(algo), {}};
    for (const AggregateRow& r : rows) {
      if (r.coverage == 0) continue;
      if (have_f_star) {
        // Floor keeps exactly-closed gaps visible on the log axis.
        sp.points.emplace_back(r.tau,
                               std::max(r.mean_f_hat - f_star, 1e-12));
      }
      if (std::isfinite(r.mean_f_check)) {
        sc.points.emplace_back(
            r.tau, std::max(r.mean_f_hat - r.mean_f_check, 1e-12));
      }
    }
    primal.push_back(std::move(sp));
    certified.push_back(std::move(sc));
  }

  ChartOptions copt;
  copt.x_label = "wall time [s]";
  if (have_f_star) {
    copt.title = "primal gap";
    copt.y_label = "mean upper bound minus optimum";
    std::ofstream out(fs::path(out_dir) / "gap_primal.svg");
    out << render_chart_svg(primal, copt);
  }
  copt.title = "certified gap";
  copt.y_label = "mean upper minus lower bound";
  std::ofstream out(fs::path(out_dir) / "gap_certified.svg");
  out << render_chart_svg(certified, copt);
}

}  // namespace minstruct
