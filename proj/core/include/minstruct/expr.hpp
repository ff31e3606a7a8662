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
// Structured convex expressions. Objective pieces and functional constraints
// are trees built from a small set of node kinds; the solver layers only ever
// interact with them through evaluation, convexity/LP-representability
// classification, and epigraph lowering.

#ifndef MINSTRUCT_EXPR_HPP_
#define MINSTRUCT_EXPR_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minstruct {

// a . x + b over a fixed ambient dimension (coeffs.size()).
struct AffineForm {
  std::vector<double> coeffs;
  double offset = 0.0;

  double eval(const std::vector<double>& x) const;
};

enum class ExprKind {
  kAffine,       // a . x + b
  kMaxOf,        // max of children
  kSumOf,        // sum of children
  kScale,        // weight * child, weight >= 0 for a convexity certificate
  kSquareAffine, // (a . x + b)^2
  kExpAffine,    // exp(a . x + b)
  kNeg,          // -child; breaks the convexity certificate unless affine
};

// Expression tree with value semantics. `affine` is the payload of the three
// leaf kinds; `weight` is only meaningful for kScale.
struct ConvexExpr {
  ExprKind kind = ExprKind::kAffine;
  AffineForm affine;
  double weight = 1.0;
  std::vector<ConvexExpr> children;
};

ConvexExpr make_affine(std::vector<double> coeffs, double offset);
ConvexExpr make_max(std::vector<ConvexExpr> children);
ConvexExpr make_sum(std::vector<ConvexExpr> children);
ConvexExpr make_scale(double weight, ConvexExpr child);
ConvexExpr make_square_affine(std::vector<double> coeffs, double offset);
ConvexExpr make_exp_affine(std::vector<double> coeffs, double offset);
ConvexExpr make_neg(ConvexExpr child);

struct ExprClass {
  bool certified_convex = false;
  bool lp_representable = false;
};

// Thrown when an operation requires LP-representability and does not have it.
struct UnsupportedExpression : std::runtime_error {
  explicit UnsupportedExpression(const std::string& what)
      : std::runtime_error(what) {}
};

double evaluate(const ConvexExpr& e, const std::vector<double>& x);

// Syntactic certificate. certified_convex == false means "not certified",
// not "nonconvex"; canonicalize() first so affine rewrites are recognized.
ExprClass classify(const ConvexExpr& e);

// Rewrites kNeg(kAffine) and kScale(_, kAffine) into plain kAffine nodes so
// that sign-flipped affine atoms keep their convexity certificate.
ConvexExpr canonicalize(const ConvexExpr& e);

// Ambient dimension every affine payload in the tree agrees on.
// Throws std::invalid_argument on a mismatch with `dim`.
void check_dimension(const ConvexExpr& e, std::size_t dim);

// Epigraph lowering of an LP-representable expression. All rows read
// row(x, aux) <= 0 over the extended variable vector; `value` is an affine
// expression of (x, aux) that equals the expression value once every kMaxOf
// auxiliary sits at its tight position, which minimization enforces.
struct EpigraphForm {
  std::size_t dim = 0;      // ambient dimension of x
  std::size_t num_aux = 0;  // auxiliaries appended after x
  std::vector<AffineForm> rows;
  AffineForm value;
};

EpigraphForm lower_to_epigraph(const ConvexExpr& e, std::size_t dim);

// If the expression depends on coordinate `coord` only through an additive
// linear term with a state-independent slope, returns that slope (possibly
// zero when the coordinate is absent). Returns nullopt otherwise. This is the
// structural test behind monotone-coordinate elimination.
std::optional<double> separable_slope(const ConvexExpr& e, std::size_t coord);

// Quadratic extraction for single-variable trees: returns (c2, c1, c0) with
// e(x) = c2 x^2 + c1 x + c0, or nullopt when the tree is not a polynomial of
// degree <= 2 in that variable (kMaxOf and kExpAffine nodes fail).
std::optional<std::array<double, 3>> univariate_quadratic(const ConvexExpr& e);

}  // namespace minstruct

#endif  // MINSTRUCT_EXPR_HPP_
