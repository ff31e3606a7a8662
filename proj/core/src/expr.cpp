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

#include "minstruct/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace minstruct {

double AffineForm::eval(const std::vector<double>& x) const {
  if (x.size() < coeffs.size()) {
    throw std::invalid_argument("AffineForm::eval: point has too few coords");
  }
  double acc = offset;
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * x[i];
  return acc;
}

ConvexExpr make_affine(std::vector<double> coeffs, double offset) {
  ConvexExpr e;
  e.kind = ExprKind::kAffine;
  e.affine = {std::move(coeffs), offset};
  return e;
}

ConvexExpr make_max(std::vector<ConvexExpr> children) {
  if (children.empty()) {
    throw std::invalid_argument("make_max: needs at least one child");
  }
  ConvexExpr e;
  e.kind = ExprKind::kMaxOf;
  e.children = std::move(children);
  return e;
}

ConvexExpr make_sum(std::vector<ConvexExpr> children) {
  if (children.empty()) {
    throw std::invalid_argument("make_sum: needs at least one child");
  }
  ConvexExpr e;
  e.kind = ExprKind::kSumOf;
  e.children = std::move(children);
  return e;
}

ConvexExpr make_scale(double weight, ConvexExpr child) {
  ConvexExpr e;
  e.kind = ExprKind::kScale;
  e.weight = weight;
  e.children.push_back(std::move(child));
  return e;
}

ConvexExpr make_square_affine(std::vector<double> coeffs, double offset) {
  ConvexExpr e;
  e.kind = ExprKind::kSquareAffine;
  e.affine = {std::move(coeffs), offset};
  return e;
}

ConvexExpr make_exp_affine(std::vector<double> coeffs, double offset) {
  ConvexExpr e;
  e.kind = ExprKind::kExpAffine;
  e.affine = {std::move(coeffs), offset};
  return e;
}

ConvexExpr make_neg(ConvexExpr child) {
  ConvexExpr e;
  e.kind = ExprKind::kNeg;
  e.children.push_back(std::move(child));
  return e;
}

double evaluate(const ConvexExpr& e, const std::vector<double>& x) {
  switch (e.kind) {
    case ExprKind::kAffine:
      return e.affine.eval(x);
    case ExprKind::kMaxOf: {
      double best = -std::numeric_limits<double>::infinity();
      for (const ConvexExpr& c : e.children) {
        best = std::max(best, evaluate(c, x));
      }
      return best;
    }
    case ExprKind::kSumOf: {
      double acc = 0.0;
      for (const ConvexExpr& c : e.children) acc += evaluate(c, x);
      return acc;
    }
    case ExprKind::kScale:
      return e.weight * evaluate(e.children[0], x);
    case ExprKind::kSquareAffine: {
      const double v = e.affine.eval(x);
      return v * v;
    }
    case ExprKind::kExpAffine:
      return std::exp(e.affine.eval(x));
    case ExprKind::kNeg:
      return -evaluate(e.children[0], x);
  }
  throw std::logic_error("evaluate: unknown node kind");
}

ExprClass classify(const ConvexExpr& e) {
  switch (e.kind) {
    case ExprKind::kAffine:
      return {true, true};
    case ExprKind::kMaxOf:
    case ExprKind::kSumOf: {
      ExprClass out{true, true};
      for (const ConvexExpr& c : e.children) {
        const ExprClass cc = classify(c);
        out.certified_convex = out.certified_convex && cc.certified_convex;
        out.lp_representable = out.lp_representable && cc.lp_representable;
      }
      return out;
    }
    case ExprKind::kScale: {
      const ExprClass cc = classify(e.children[0]);
      if (e.weight < 0.0) return {false, false};
      return {cc.certified_convex, cc.lp_representable};
    }
    case ExprKind::kSquareAffine:
    case ExprKind::kExpAffine:
      return {true, false};
    case ExprKind::kNeg:
      return {false, false};
  }
  throw std::logic_error("classify: unknown node kind");
}

ConvexExpr canonicalize(const ConvexExpr& e) {
  ConvexExpr out = e;
  for (ConvexExpr& c : out.children) c = canonicalize(c);
  if (out.kind == ExprKind::kNeg &&
      out.children[0].kind == ExprKind::kAffine) {
    AffineForm a = out.children[0].affine;
    for (double& v : a.coeffs) v = -v;
    a.offset = -a.offset;
    out.kind = ExprKind::kAffine;
    out.affine = std::move(a);
    out.children.clear();
  } else if (out.kind == ExprKind::kScale &&
             out.children[0].kind == ExprKind::kAffine) {
    AffineForm a = out.children[0].affine;
    for (double& v : a.coeffs) v *= out.weight;
    a.offset *= out.weight;
    out.kind = ExprKind::kAffine;
    out.affine = std::move(a);
    out.weight = 1.0;
    out.children.clear();
  }
  return out;
}

void check_dimension(const ConvexExpr& e, std::size_t dim) {
  switch (e.kind) {
    case ExprKind::kAffine:
    case ExprKind::kSquareAffine:
    case ExprKind::kExpAffine:
      if (e.affine.coeffs.size() != dim) {
        throw std::invalid_argument("expression coefficient vector size " +
                                    std::to_string(e.affine.coeffs.size()) +
                                    " does not match dimension " +
                                    std::to_string(dim));
      }
      return;
    default:
      for (const ConvexExpr& c : e.children) check_dimension(c, dim);
  }
}

namespace {

// Recursive lowering worker. `mult` is the accumulated nonnegative scale
// applied to this subtree; rows are appended as constraints over (x, aux).
AffineForm lower_rec(const ConvexExpr& e, double mult, EpigraphForm* out) {
  const std::size_t width = out->dim + out->num_aux;
  switch (e.kind) {
    case ExprKind::kAffine: {
      AffineForm t;
      t.coeffs.assign(width, 0.0);
      for (std::size_t i = 0; i < e.affine.coeffs.size(); ++i) {
        t.coeffs[i] = mult * e.affine.coeffs[i];
      }
      t.offset = mult * e.affine.offset;
      return t;
    }
    case ExprKind::kSumOf: {
      AffineForm t;
      t.coeffs.assign(width, 0.0);
      for (const ConvexExpr& c : e.children) {
        AffineForm ct = lower_rec(c, mult, out);
        t.coeffs.resize(out->dim + out->num_aux, 0.0);
        ct.coeffs.resize(out->dim + out->num_aux, 0.0);
        for (std::size_t i = 0; i < ct.coeffs.size(); ++i) {
          t.coeffs[i] += ct.coeffs[i];
        }
        t.offset += ct.offset;
      }
      return t;
    }
    case ExprKind::kScale: {
      if (e.weight < 0.0) {
        throw UnsupportedExpression(
            "epigraph lowering: negative scale weight");
      }
      return lower_rec(e.children[0], mult * e.weight, out);
    }
    case ExprKind::kMaxOf: {
      const std::size_t t_index = out->dim + out->num_aux;
      ++out->num_aux;
      for (const ConvexExpr& c : e.children) {
        AffineForm ct = lower_rec(c, 1.0, out);
        ct.coeffs.resize(out->dim + out->num_aux, 0.0);
        ct.coeffs[t_index] -= 1.0;  // child(z) - t <= 0
        out->rows.push_back(std::move(ct));
      }
      AffineForm t;
      t.coeffs.assign(out->dim + out->num_aux, 0.0);
      t.coeffs[t_index] = mult;
      return t;
    }
    case ExprKind::kSquareAffine:
    case ExprKind::kExpAffine:
    case ExprKind::kNeg:
      throw UnsupportedExpression(
          "epigraph lowering: node kind is not LP-representable");
  }
  throw std::logic_error("lower_rec: unknown node kind");
}

}  // namespace

EpigraphForm lower_to_epigraph(const ConvexExpr& e, std::size_t dim) {
  check_dimension(e, dim);
  EpigraphForm out;
  out.dim = dim;
  out.value = lower_rec(e, 1.0, &out);
  const std::size_t width = dim + out.num_aux;
  out.value.coeffs.resize(width, 0.0);
  for (AffineForm& r : out.rows) r.coeffs.resize(width, 0.0);
  return out;
}

std::optional<double> separable_slope(const ConvexExpr& e, std::size_t coord) {
  switch (e.kind) {
    case ExprKind::kAffine:
      return coord < e.affine.coeffs.size() ? e.affine.coeffs[coord] : 0.0;
    case ExprKind::kSumOf: {
      double acc = 0.0;
      for (const ConvexExpr& c : e.children) {
        const auto s = separable_slope(c, coord);
        if (!s) return std::nullopt;
        acc += *s;
      }
      return acc;
    }
    case ExprKind::kScale: {
      const auto s = separable_slope(e.children[0], coord);
      if (!s) return std::nullopt;
      return e.weight * *s;
    }
    case ExprKind::kMaxOf: {
      // max(g_1 + s x_c, ..., g_k + s x_c) = s x_c + max(g_1, ..., g_k)
      // only when every child shares the same slope s.
      std::optional<double> common;
      for (const ConvexExpr& c : e.children) {
        const auto s = separable_slope(c, coord);
        if (!s) return std::nullopt;
        if (common && *common != *s) return std::nullopt;
        common = *s;
      }
      return common;
    }
    case ExprKind::kSquareAffine:
    case ExprKind::kExpAffine: {
      const double a =
          coord < e.affine.coeffs.size() ? e.affine.coeffs[coord] : 0.0;
      if (a == 0.0) return 0.0;
      return std::nullopt;
    }
    case ExprKind::kNeg: {
      const auto s = separable_slope(e.children[0], coord);
      if (!s) return std::nullopt;
      return -*s;
    }
  }
  throw std::logic_error("separable_slope: unknown node kind");
}

std::optional<std::array<double, 3>> univariate_quadratic(
    const ConvexExpr& e) {
  switch (e.kind) {
    case ExprKind::kAffine: {
      if (e.affine.coeffs.size() > 1) return std::nullopt;
      const double a = e.affine.coeffs.empty() ? 0.0 : e.affine.coeffs[0];
      return std::array<double, 3>{0.0, a, e.affine.offset};
    }
    case ExprKind::kSumOf: {
      std::array<double, 3> acc{0.0, 0.0, 0.0};
      for (const ConvexExpr& c : e.children) {
        const auto q = univariate_quadratic(c);
        if (!q) return std::nullopt;
        for (int i = 0; i < 3; ++i) acc[i] += (*q)[i];
      }
      return acc;
    }
    case ExprKind::kScale: {
      auto q = univariate_quadratic(e.children[0]);
      if (!q) return std::nullopt;
      for (double& v : *q) v *= e.weight;
      return q;
    }
    case ExprKind::kSquareAffine: {
      if (e.affine.coeffs.size() > 1) return std::nullopt;
      const double a = e.affine.coeffs.empty() ? 0.0 : e.affine.coeffs[0];
      const double b = e.affine.offset;
      return std::array<double, 3>{a * a, 2.0 * a * b, b * b};
    }
    case ExprKind::kNeg: {
      auto q = univariate_quadratic(e.children[0]);
      if (!q) return std::nullopt;
      for (double& v : *q) v = -v;
      return q;
    }
    case ExprKind::kMaxOf:
    case ExprKind::kExpAffine:
      return std::nullopt;
  }
  throw std::logic_error("univariate_quadratic: unknown node kind");
}

}  // namespace minstruct
