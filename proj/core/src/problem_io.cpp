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

#include "minstruct/problem_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace minstruct {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json bound_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double bound_from_json(const json& j, const char* where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw std::invalid_argument(std::string("problem json: bad bound at ") +
                              where);
}

json expr_to_json(const ConvexExpr& e) {
  json j;
  switch (e.kind) {
    case ExprKind::kAffine:
      j["kind"] = "affine";
      j["coeffs"] = e.affine.coeffs;
      j["offset"] = e.affine.offset;
      return j;
    case ExprKind::kSquareAffine:
      j["kind"] = "sq_affine";
      j["coeffs"] = e.affine.coeffs;
      j["offset"] = e.affine.offset;
      return j;
    case ExprKind::kExpAffine:
      j["kind"] = "exp_affine";
      j["coeffs"] = e.affine.coeffs;
      j["offset"] = e.affine.offset;
      return j;
    case ExprKind::kMaxOf:
    case ExprKind::kSumOf: {
      j["kind"] = e.kind == ExprKind::kMaxOf ? "max" : "sum";
      json kids = json::array();
      for (const ConvexExpr& c : e.children) kids.push_back(expr_to_json(c));
      j["children"] = std::move(kids);
      return j;
    }
    case ExprKind::kScale:
      j["kind"] = "scale";
      j["weight"] = e.weight;
      j["child"] = expr_to_json(e.children[0]);
      return j;
    case ExprKind::kNeg:
      j["kind"] = "neg";
      j["child"] = expr_to_json(e.children[0]);
      return j;
  }
  throw std::logic_error("expr_to_json: unknown node kind");
}

ConvexExpr expr_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("problem json: expression without a kind");
  }
  const std::string kind = j["kind"].get<std::string>();
  const auto coeffs = [&j]() {
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
      throw std::invalid_argument("problem json: expression without coeffs");
    }
    return j["coeffs"].get<std::vector<double>>();
  };
  const auto offset = [&j]() {
    return j.contains("offset") ? j["offset"].get<double>() : 0.0;
  };
  const auto children = [&j]() {
    if (!j.contains("children") || !j["children"].is_array() ||
        j["children"].empty()) {
      throw std::invalid_argument("problem json: node needs children");
    }
    std::vector<ConvexExpr> out;
    for (const json& c : j["children"]) out.push_back(expr_from_json(c));
    return out;
  };
  const auto child = [&j]() {
    if (!j.contains("child")) {
      throw std::invalid_argument("problem json: node needs a child");
    }
    return expr_from_json(j["child"]);
  };
  if (kind == "affine") return make_affine(coeffs(), offset());
  if (kind == "sq_affine") return make_square_affine(coeffs(), offset());
  if (kind == "exp_affine") return make_exp_affine(coeffs(), offset());
  if (kind == "max") return make_max(children());
  if (kind == "sum") return make_sum(children());
  if (kind == "neg") return make_neg(child());
  if (kind == "scale") {
    if (!j.contains("weight") || !j["weight"].is_number()) {
      throw std::invalid_argument("problem json: scale without weight");
    }
    return make_scale(j["weight"].get<double>(), child());
  }
  throw std::invalid_argument("problem json: unknown expression kind '" +
                              kind + "'");
}

}  // namespace

std::string problem_to_json(const MSProblem& p) {
  json j;
  j["name"] = p.name;
  j["d"] = p.d;
  json basic;
  basic["A_in"] = p.basic.ineq_a;
  basic["b_in"] = p.basic.ineq_b;
  basic["A_eq"] = p.basic.eq_a;
  basic["b_eq"] = p.basic.eq_b;
  json lo = json::array();
  json hi = json::array();
  for (double v : p.basic.lo) lo.push_back(bound_to_json(v));
  for (double v : p.basic.hi) hi.push_back(bound_to_json(v));
  basic["lo"] = std::move(lo);
  basic["hi"] = std::move(hi);
  j["basic"] = std::move(basic);
  json pieces = json::array();
  for (const ConvexExpr& e : p.pieces) pieces.push_back(expr_to_json(e));
  j["pieces"] = std::move(pieces);
  json constraints = json::array();
  for (const ConvexExpr& e : p.constraints) {
    constraints.push_back(expr_to_json(e));
  }
  j["constraints"] = std::move(constraints);
  if (!p.provenance.empty()) {
    j["provenance"] = json::parse(p.provenance);
  }
  return j.dump(2);
}

MSProblem problem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("problem json: parse error: ") +
                                e.what());
  }
  MSProblem p;
  if (!j.is_object() || !j.contains("d") || !j.contains("pieces") ||
      !j.contains("basic")) {
    throw std::invalid_argument(
        "problem json: missing one of d/pieces/basic");
  }
  p.name = j.value("name", std::string());
  p.d = j["d"].get<std::size_t>();
  const json& basic = j["basic"];
  p.basic.ineq_a = basic.value("A_in", std::vector<std::vector<double>>());
  p.basic.ineq_b = basic.value("b_in", std::vector<double>());
  p.basic.eq_a = basic.value("A_eq", std::vector<std::vector<double>>());
  p.basic.eq_b = basic.value("b_eq", std::vector<double>());
  if (!basic.contains("lo") || !basic.contains("hi")) {
    throw std::invalid_argument("problem json: basic set without lo/hi");
  }
  for (const json& v : basic["lo"]) {
    p.basic.lo.push_back(bound_from_json(v, "basic.lo"));
  }
  for (const json& v : basic["hi"]) {
    p.basic.hi.push_back(bound_from_json(v, "basic.hi"));
  }
  for (const json& e : j["pieces"]) p.pieces.push_back(expr_from_json(e));
  if (j.contains("constraints")) {
    for (const json& e : j["constraints"]) {
      p.constraints.push_back(expr_from_json(e));
    }
  }
  if (j.contains("provenance")) p.provenance = j["provenance"].dump();
  normalize_problem(&p);
  validate_problem(p);
  return p;
}

void save_problem(const MSProblem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << problem_to_json(p) << "\n";
}

MSProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open problem file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json(buf.str());
}

}  // namespace minstruct
