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

#include "minstruct/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace minstruct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> with_eta(const std::vector<double>& u_coeffs,
                             double eta_coeff) {
  std::vector<double> c = u_coeffs;
  c.push_back(eta_coeff);
  return c;
}

}  // namespace

int poplp_delta(Rng* rng) {
  switch (rng->uniform_below(10)) {
    case 6:
      return 1;
    case 7:
      return -1;
    case 8:
      return 2;
    case 9:
      return -2;
    default:
      return 0;
  }
}

MSProblem gen_poplp(const PoplpParams& params) {
  if (params.n < 1 || params.m < 1 || params.p < 1) {
    throw std::invalid_argument("gen_poplp: n, m, p must be >= 1");
  }
  if (params.budget <= 0.0 || params.zeta <= 0.0) {
    throw std::invalid_argument("gen_poplp: budget and zeta must be > 0");
  }
  if (params.omega < 0.0 || params.omega >= 1.0) {
    throw std::invalid_argument("gen_poplp: omega must lie in [0, 1)");
  }
  const int n = params.n;
  const int m = params.m;
  const int p = params.p;
  Rng rng(params.seed);

  std::vector<double> beta_bar(p);
  for (int l = 0; l < p; ++l) {
    beta_bar[l] = static_cast<double>(rng.uniform_int(1, 15));
  }
  std::vector<std::vector<double>> beta(n, std::vector<double>(p));
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < p; ++l) {
      beta[i][l] = std::max(
          0.0, beta_bar[l] + params.deviation * poplp_delta(&rng));
    }
  }
  double norm_max = -kInf;
  double norm_min = kInf;
  for (int i = 0; i < n; ++i) {
    const double l1 =
        std::accumulate(beta[i].begin(), beta[i].end(), 0.0);
    norm_max = std::max(norm_max, l1);
    norm_min = std::min(norm_min, l1);
  }
  const double gamma_max = 0.15 * (norm_max - norm_min);
  std::vector<double> gamma(n);
  for (int i = 0; i < n; ++i) {
    gamma[i] = rng.uniform_real(0.0, gamma_max);
  }

  std::vector<std::vector<double>> v(m, std::vector<double>(p, 0.0));
  std::vector<double> w(m);
  std::vector<int> positions(p);
  for (int j = 0; j < m; ++j) {
    const int iota = rng.uniform_int((p + 9) / 10, p);
    std::iota(positions.begin(), positions.end(), 0);
    for (int k = 0; k < iota; ++k) {
      const std::size_t r = k + rng.uniform_below(p - k);
      std::swap(positions[k], positions[r]);
      v[j][positions[k]] = static_cast<double>(rng.uniform_int(1, 10));
    }
    const double l1 = std::accumulate(v[j].begin(), v[j].end(), 0.0);
    w[j] = params.zeta * l1 / p;
  }

  MSProblem prob;
  std::ostringstream name;
  name << "poplp-n" << n << "-m" << m << "-p" << p << "-s" << params.seed;
  prob.name = name.str();
  prob.d = p + 1;  // (u, eta)

  std::vector<ConvexExpr> scenario_rows;
  scenario_rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> c(p + 1, 0.0);
    for (int l = 0; l < p; ++l) c[l] = -beta[i][l];
    scenario_rows.push_back(make_affine(c, gamma[i]));
  }
  const ConvexExpr worst_case = make_max(scenario_rows);
  for (int i = 0; i < n; ++i) {
    std::vector<double> c(p + 1, 0.0);
    for (int l = 0; l < p; ++l) c[l] = -(1.0 - params.omega) * beta[i][l];
    c[p] = params.penalty;
    ConvexExpr base =
        make_affine(c, (1.0 - params.omega) * gamma[i]);
    if (params.omega == 0.0) {
      prob.pieces.push_back(std::move(base));
    } else {
      prob.pieces.push_back(make_sum(
          {std::move(base), make_scale(params.omega, worst_case)}));
    }
  }
  for (int j = 0; j < m; ++j) {
    prob.constraints.push_back(make_affine(with_eta(v[j], -1.0), -w[j]));
  }

  prob.basic.eq_a.push_back(with_eta(std::vector<double>(p, 1.0), 0.0));
  prob.basic.eq_b.push_back(params.budget);
  prob.basic.lo.assign(p + 1, 0.0);
  prob.basic.hi.assign(p + 1, kInf);

  std::ostringstream prov;
  prov << "{\"family\":\"poplp\",\"n\":" << n << ",\"m\":" << m
       << ",\"deviation\":" << params.deviation << ",\"zeta\":" << params.zeta
       << ",\"p\":" << p << ",\"budget\":" << params.budget
       << ",\"omega\":" << params.omega << ",\"penalty\":" << params.penalty
       << ",\"seed\":" << params.seed << "}";
  prob.provenance = prov.str();

  normalize_problem(&prob);
  validate_problem(prob);
  return prob;
}

MSProblem toy_illustration() {
  MSProblem prob;
  prob.name = "toy-illustration";
  prob.d = 1;
  // 0.1 (x - 1)^2
  prob.pieces.push_back(
      make_scale(0.1, make_square_affine({1.0}, -1.0)));
  // max{x - 2, -2x} - 1, constants folded into the branches
  prob.pieces.push_back(make_max(
      {make_affine({1.0}, -3.0), make_affine({-2.0}, -1.0)}));
  // 1 + exp(x / 5)
  prob.pieces.push_back(make_sum(
      {make_affine({0.0}, 1.0), make_exp_affine({0.2}, 0.0)}));
  // 10 (x + 4)^2
  prob.pieces.push_back(
      make_scale(10.0, make_square_affine({1.0}, 4.0)));
  // 3/2 - x^2 <= 0, concave so uncertified
  prob.constraints.push_back(make_sum(
      {make_affine({0.0}, 1.5), make_neg(make_square_affine({1.0}, 0.0))}));
  prob.constraints.push_back(make_affine({1.0}, -5.0));
  prob.constraints.push_back(make_affine({-1.0}, -5.0));
  // Wider than dom F, so it does not move any optimum.
  prob.basic.lo = {-8.0};
  prob.basic.hi = {8.0};
  prob.provenance = "{\"family\":\"toy_illustration\"}";
  normalize_problem(&prob);
  validate_problem(prob);
  return prob;
}

MSProblem toy_tikhonov() {
  const std::vector<double> beta1 = {0.25, -0.5, 1.0 / 3.0, 2.0, 0.0, 3.0};
  const std::vector<double> gamma1 = {-2.0, -1.0, 0.0, -2.0, -0.25, -4.0};
  const std::vector<double> beta2 = {1.5, 1.0, -1.0, 4.0, -2.0, 0.0};
  const std::vector<double> gamma2 = {0.0, 2.0, 1.0, -1.0, 1.0, 2.0};
  MSProblem prob;
  prob.name = "toy-tikhonov";
  prob.d = 2;  // (u, eta)
  for (int i = 0; i < 6; ++i) {
    // u^2/2 + eta - beta2 u - gamma2
    prob.pieces.push_back(make_sum(
        {make_scale(0.5, make_square_affine({1.0, 0.0}, 0.0)),
         make_affine({-beta2[i], 1.0}, -gamma2[i])}));
  }
  for (int j = 0; j < 6; ++j) {
    // beta1 u + gamma1 - eta
    prob.constraints.push_back(make_affine({beta1[j], -1.0}, gamma1[j]));
  }
  prob.basic.lo = {-5.0, -kInf};
  prob.basic.hi = {5.0, kInf};
  prob.provenance = "{\"family\":\"toy_tikhonov\"}";
  normalize_problem(&prob);
  validate_problem(prob);
  return prob;
}

AbstractInstance table4_instance() {
  AbstractInstance inst;
  inst.params.n = 9;
  inst.params.m = 9;
  inst.params.sigma_act = 1.0 / 9.0;
  inst.params.sigma_deg = 8.0 / 36.0;
  inst.params.theta = 0.0;
  inst.params.theta_bar = 0.0;
  inst.edges = {{6, 0}, {6, 1}, {6, 2}, {1, 3},
                {3, 2}, {3, 4}, {5, 3}, {5, 8}};
  inst.out_neighbors.assign(9, {});
  for (const auto& [a, b] : inst.edges) inst.out_neighbors[a].push_back(b);
  inst.piece_value = {2.5, 3.2, 2.0, 3.0, 7.0 / 3.0, 6.0, 6.0, 2.5, 4.0};
  inst.full_value_at_min = {2.5, 2.5, 2.0, 8.0 / 3.0, 7.0 / 3.0,
                            4.5, 4.0, 2.5, 4.0};
  inst.active_sets.resize(9);
  for (int i = 0; i < 9; ++i) inst.active_sets[i] = {i};
  inst.bound_slack.assign(9, 0.0);
  return inst;
}

MSProblem dcpl_to_ms(const AffineFamily& outer, const AffineFamily& inner,
                     const BasicSet& domain, const std::string& name) {
  if (outer.beta.empty() || inner.beta.empty() ||
      outer.beta.size() != outer.gamma.size() ||
      inner.beta.size() != inner.gamma.size()) {
    throw std::invalid_argument("dcpl_to_ms: families must be nonempty and "
                                "consistently sized");
  }
  const std::size_t p = outer.beta[0].size();
  for (const auto& fam : {&outer, &inner}) {
    for (const auto& b : fam->beta) {
      if (b.size() != p) {
        throw std::invalid_argument("dcpl_to_ms: ragged coefficient rows");
      }
    }
  }
  if (domain.lo.size() != p || domain.hi.size() != p) {
    throw std::invalid_argument("dcpl_to_ms: domain dimension mismatch");
  }
  MSProblem prob;
  prob.name = name;
  prob.d = p + 1;
  for (std::size_t i = 0; i < inner.beta.size(); ++i) {
    // eta - gamma2 - <beta2, u>
    std::vector<double> c(p + 1, 0.0);
    for (std::size_t l = 0; l < p; ++l) c[l] = -inner.beta[i][l];
    c[p] = 1.0;
    prob.pieces.push_back(make_affine(c, -inner.gamma[i]));
  }
  for (std::size_t j = 0; j < outer.beta.size(); ++j) {
    // -eta + gamma1 + <beta1, u>
    prob.constraints.push_back(
        make_affine(with_eta(outer.beta[j], -1.0), outer.gamma[j]));
  }
  prob.basic.ineq_b = domain.ineq_b;
  for (const auto& row : domain.ineq_a) {
    prob.basic.ineq_a.push_back(with_eta(row, 0.0));
  }
  prob.basic.eq_b = domain.eq_b;
  for (const auto& row : domain.eq_a) {
    prob.basic.eq_a.push_back(with_eta(row, 0.0));
  }
  prob.basic.lo = with_eta(domain.lo, -kInf);
  prob.basic.hi = with_eta(domain.hi, kInf);
  prob.provenance = "{\"family\":\"dcpl\"}";
  normalize_problem(&prob);
  validate_problem(prob);
  return prob;
}

}  // namespace minstruct
