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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minstruct/bench.hpp"
#include "minstruct/dag_sim.hpp"
#include "minstruct/instances.hpp"
#include "minstruct/problem_io.hpp"
#include "minstruct/solvers.hpp"
#include "minstruct/trace_io.hpp"

namespace {

using namespace minstruct;

void write_table4_json(const std::string& path) {
  const AbstractInstance inst = table4_instance();
  nlohmann::json doc;
  doc["family"] = "table4";
  doc["n"] = inst.n();
  doc["m"] = inst.m();
  for (const auto& [a, b] : inst.edges) {
    doc["edges"].push_back({a, b});
  }
  doc["piece_value"] = inst.piece_value;
  doc["full_value_at_min"] = inst.full_value_at_min;
  doc["active_sets"] = inst.active_sets;
  doc["bound_slack"] = inst.bound_slack;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path);
  out << doc.dump(2) << "\n";
}

struct SolveArgs {
  std::string algo = "ulo";
  std::string problem_file;
  std::string oracle = "auto";
  double rho = 1e-3;
  double eps = 1e-3;
  double eps_rel = 5e-2;
  std::uint64_t seed = 0;
  double time_limit = 0.0;
  std::string trace_file;
  int start = -1;
  int ram_budget = 0;
};

const char* status_name(ExitStatus s) {
  switch (s) {
    case ExitStatus::kCertifiedOptimal:
      return "certified-optimal";
    case ExitStatus::kGapSatisfied:
      return "gap-satisfied";
    case ExitStatus::kBudgetExhausted:
      return "budget-exhausted";
    case ExitStatus::kTimeLimit:
      return "time-limit";
  }
  return "unknown";
}

void cmd_solve(const SolveArgs& args) {
  const MSProblem problem = load_problem(args.problem_file);
  const int n = problem.n();
  auto oracle = make_oracle(problem, args.oracle, CostModel{-1.0, 1.5});
  SolverConfig cfg;
  cfg.rho = args.rho;
  cfg.eps = args.eps;
  cfg.eps_rel = args.eps_rel;
  cfg.seed = args.seed;
  cfg.time_limit_s = args.time_limit;
  int start = args.start;
  if (start < 0) {
    start = static_cast<int>(Rng(cfg.seed).uniform_below(n));
  } else if (start >= n) {
    throw std::invalid_argument("--start out of range");
  }

  SolveReport report;
  if (args.algo == "ulo") {
    report = ulo(problem, oracle.get(), start, cfg);
  } else if (args.algo == "es") {
    report = enumerate_pieces(problem, oracle.get(), cfg);
  } else if (args.algo == "ram") {
    const int budget = args.ram_budget > 0 ? args.ram_budget : n;
    report = restarted_local(problem, oracle.get(), cfg, budget, start);
  } else {
    throw std::invalid_argument("unknown algorithm: " + args.algo);
  }

  if (!args.trace_file.empty()) {
    save_trace_csv(args.trace_file,
                   problem.name + "-" + args.algo + "-s" +
                       std::to_string(args.seed),
                   args.algo, args.seed, report.trace);
  }

  std::cout << "problem: " << problem.name << " (n=" << n
            << ", m=" << problem.m() << ", d=" << problem.d << ")\n";
  std::cout << "algo: " << args.algo << "  oracle: " << args.oracle
            << "  seed: " << args.seed << "\n";
  std::cout << "status: " << status_name(report.status) << "\n";
  std::cout << "F_hat = " << format_double(report.f_hat) << "\n";
  std::cout << "F_check = " << format_double(report.f_check) << "\n";
  if (report.status == ExitStatus::kCertifiedOptimal) {
    std::cout << "F* = " << format_double(report.f_hat) << "\n";
  }
  std::cout << "x_best = (";
  for (std::size_t i = 0; i < report.x_best.size(); ++i) {
    if (i > 0) std::cout << ", ";
    std::cout << format_double(report.x_best[i]);
  }
  std::cout << ")\n";
  std::cout << "iterations: " << report.iterations
            << "  visited: " << report.visited.size()
            << "  subset: " << report.subset.size() << "\n";
  const OracleStats stats = oracle->stats();
  std::cout << "oracle: " << stats.misses << " solves, " << stats.hits
            << " cache hits, model time " << format_double(stats.model_time)
            << "\n";
}

struct SimulateArgs {
  int n = 100;
  int m = 2000;
  double sigma_act = 1e-2;
  std::vector<double> sigma_deg = {2e-3};
  std::vector<double> upsilon = {0.0};
  double theta = 10.0;
  std::vector<double> theta_bar = {5.0};
  double cost_c = -1.0;
  double cost_r = 1.5;
  int instances = 5;
  int starts = 20;
  std::uint64_t seed = 0;
  std::string out_file;
  std::string summary_file;
  std::string preset;
  double eps = 1e-3;
  double eps_rel = 5e-2;
};

void cmd_simulate_table4(const SimulateArgs& args) {
  const AbstractInstance inst = table4_instance();
  CostModel cost{args.cost_c, args.cost_r};
  if (cost.fixed_cost < 0.0) {
    cost = CostModel::matched(inst.m(), cost.exponent);
  }
  SimTolerances tol;
  tol.eps = args.eps;
  tol.eps_rel = args.eps_rel;
  const SimEnumeration es = sim_enumeration(inst, cost);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out_file.empty()) {
    file.open(args.out_file);
    if (!file) throw std::invalid_argument("cannot open " + args.out_file);
    out = &file;
  }
  *out << "start,K,F_hat,F_check,gamma_ulo,gamma_es_n,upsilon_ratio\n";
  const int starts = std::min(args.starts, inst.n());
  Rng root(args.seed);
  for (int s = 0; s < starts; ++s) {
    Rng rng = root.split(s);
    const SimReport rep = sim_ulo(inst, cost, s, tol, &rng);
    *out << s << ',' << rep.iterations << ',' << format_double(rep.f_hat)
         << ',' << format_double(rep.f_check) << ','
         << format_double(rep.gamma) << ',' << format_double(es.gamma)
         << ',' << format_double(rep.gamma / es.gamma) << "\n";
  }
  std::cerr << "enumeration F* = " << format_double(es.f_star) << "\n";
}

void cmd_simulate(const SimulateArgs& args) {
  if (args.preset == "table4") {
    cmd_simulate_table4(args);
    return;
  }
  if (!args.preset.empty()) {
    throw std::invalid_argument("unknown preset: " + args.preset);
  }
  SimGridConfig config;
  config.n = args.n;
  config.m = args.m;
  config.sigma_act = args.sigma_act;
  config.theta = args.theta;
  config.theta_bar_values = args.theta_bar;
  config.upsilon_values = args.upsilon;
  config.sigma_deg_values = args.sigma_deg;
  config.instances = args.instances;
  config.starts = args.starts;
  config.seed = args.seed;
  config.cost = CostModel{args.cost_c, args.cost_r};
  config.tol.eps = args.eps;
  config.tol.eps_rel = args.eps_rel;
  const std::vector<SimGridRow> rows = run_grid(config);
  if (args.out_file.empty()) {
    write_grid_csv(std::cout, rows);
  } else {
    std::ofstream file(args.out_file);
    if (!file) throw std::invalid_argument("cannot open " + args.out_file);
    write_grid_csv(file, rows);
  }
  if (!args.summary_file.empty()) {
    std::ofstream file(args.summary_file);
    if (!file) {
      throw std::invalid_argument("cannot open " + args.summary_file);
    }
    write_grid_summary_csv(file, summarize_grid(rows));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured global minimization of a minimum of convex "
               "pieces under functional constraints"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a problem instance file");
  gen->require_subcommand(1);
  std::string gen_out = "problem.json";

  auto* gen_poplp_cmd =
      gen->add_subcommand("poplp", "Investment scenario family");
  PoplpParams poplp;
  gen_poplp_cmd->add_option("-o,--out", gen_out, "output file");
  gen_poplp_cmd->add_option("--n", poplp.n, "scenario count");
  gen_poplp_cmd->add_option("--m", poplp.m, "constraint count");
  gen_poplp_cmd->add_option("--p", poplp.p, "asset count");
  gen_poplp_cmd->add_option("--deviation", poplp.deviation,
                            "deviation scale (1 or 10)");
  gen_poplp_cmd->add_option("--zeta", poplp.zeta, "budget tightness");
  gen_poplp_cmd->add_option("--budget", poplp.budget, "investment units");
  gen_poplp_cmd->add_option("--omega", poplp.omega, "pessimism weight");
  gen_poplp_cmd->add_option("--penalty", poplp.penalty, "violation penalty");
  gen_poplp_cmd->add_option("--seed", poplp.seed, "random seed");
  gen_poplp_cmd->callback(
      [&] { save_problem(gen_poplp(poplp), gen_out); });

  auto* gen_toy = gen->add_subcommand("toy", "One of the worked toys");
  std::string toy_which = "tikhonov";
  gen_toy->add_option("--which", toy_which, "tikhonov or illustration")
      ->check(CLI::IsMember({"tikhonov", "illustration"}));
  gen_toy->add_option("-o,--out", gen_out, "output file");
  gen_toy->callback([&] {
    save_problem(toy_which == "tikhonov" ? toy_tikhonov()
                                         : toy_illustration(),
                 gen_out);
  });

  auto* gen_table4 = gen->add_subcommand("table4", "Hand-built abstraction");
  gen_table4->add_option("-o,--out", gen_out, "output file");
  gen_table4->callback([&] { write_table4_json(gen_out); });

  // solve
  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run one solver on an instance");
  solve->add_option("--algo", solve_args.algo, "ulo, es, or ram")
      ->check(CLI::IsMember({"ulo", "es", "ram"}));
  solve->add_option("--problem", solve_args.problem_file, "instance file")
      ->required();
  solve->add_option("--oracle", solve_args.oracle, "lp, ref, or auto")
      ->check(CLI::IsMember({"lp", "ref", "auto"}));
  solve->add_option("--rho", solve_args.rho, "near-activity margin");
  solve->add_option("--eps", solve_args.eps, "absolute gap target");
  solve->add_option("--eps-rel", solve_args.eps_rel, "relative gap target");
  solve->add_option("--seed", solve_args.seed, "random seed");
  solve->add_option("--time-limit", solve_args.time_limit,
                    "wall-clock limit in seconds");
  solve->add_option("--trace", solve_args.trace_file, "trace CSV output");
  solve->add_option("--start", solve_args.start,
                    "start piece (default: drawn from seed)");
  solve->add_option("--ram-budget", solve_args.ram_budget,
                    "restart budget (default: piece count)");
  solve->callback([&] { cmd_solve(solve_args); });

  // simulate
  SimulateArgs sim_args;
  auto* sim = app.add_subcommand(
      "simulate", "Cost-model study on random abstractions");
  sim->add_option("--n", sim_args.n, "pieces");
  sim->add_option("--m", sim_args.m, "constraints");
  sim->add_option("--sigma-act", sim_args.sigma_act, "active-set fraction");
  sim->add_option("--sigma-deg", sim_args.sigma_deg, "edge densities")
      ->delimiter(',');
  sim->add_option("--upsilon", sim_args.upsilon, "index-weight exponents")
      ->delimiter(',');
  sim->add_option("--theta", sim_args.theta, "mean edge gap");
  sim->add_option("--theta-bar", sim_args.theta_bar, "mean bound slacks")
      ->delimiter(',');
  sim->add_option("--cost-c", sim_args.cost_c,
                  "fixed oracle cost (negative: matched rule)");
  sim->add_option("--cost-r", sim_args.cost_r, "cost exponent");
  sim->add_option("--instances", sim_args.instances, "instances per cell");
  sim->add_option("--starts", sim_args.starts, "starts per instance");
  sim->add_option("--seed", sim_args.seed, "random seed");
  sim->add_option("--eps", sim_args.eps, "absolute gap target");
  sim->add_option("--eps-rel", sim_args.eps_rel, "relative gap target");
  sim->add_option("--out", sim_args.out_file, "row CSV output");
  sim->add_option("--summary", sim_args.summary_file, "cell summary CSV");
  sim->add_option("--preset", sim_args.preset, "table4");
  sim->callback([&] { cmd_simulate(sim_args); });

  // bench
  std::string bench_plan_file;
  std::string bench_out = "bench-out";
  auto* bench = app.add_subcommand("bench", "Run a benchmark plan");
  bench->add_option("--plan", bench_plan_file, "plan JSON file")->required();
  bench->add_option("--out", bench_out, "output directory");
  bench->callback([&] {
    const BenchResult r =
        run_bench(load_bench_plan(bench_plan_file), bench_out);
    if (r.have_f_star) {
      std::cout << "F* = " << format_double(r.f_star) << "\n";
    }
    std::cout << "wrote " << bench_out << "\n";
  });

  // report
  std::string report_in;
  std::string report_out = "report-out";
  std::string report_f_star = "auto";
  auto* report = app.add_subcommand("report", "Summaries and charts");
  report->add_option("--in", report_in, "bench output directory")
      ->required();
  report->add_option("--f-star", report_f_star, "auto or a number");
  report->add_option("--out", report_out, "report directory");
  report->callback([&] {
    ReportOptions opt;
    if (report_f_star != "auto") {
      opt.auto_f_star = false;
      opt.have_f_star = true;
      opt.f_star = parse_double(report_f_star);
    }
    write_report(report_in, opt, report_out);
    std::cout << "wrote " << report_out << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UnsupportedExpression& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
