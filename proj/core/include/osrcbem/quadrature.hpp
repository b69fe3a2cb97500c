// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "osrcbem/common.hpp"

namespace osrcbem {

/// Gauss-Legendre nodes and weights on [0, 1].
struct LineRule {
  std::vector<double> x;
  std::vector<double> w;
};
LineRule gauss_legendre01(int n);

/// Rule on the reference triangle {(s, t) : s, t >= 0, s + t <= 1}.
/// Weights sum to 1/2 (the reference area).
struct TriangleRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;
  int degree = 0;
  std::size_t size() const { return weights.size(); }
};

/// Rule exact for polynomials of total degree <= `degree`. Degrees 1, 2, 4,
/// 5, 6 and 8 use symmetric Dunavant rules with positive weights; other
/// degrees use a collapsed Gauss-Legendre product rule.
TriangleRule triangle_rule(int degree);

/// Collapsed tensor Gauss rule with n points per direction (n^2 points).
TriangleRule collapsed_gauss_rule(int n);

/// Quadrature for a pair of reference triangles sharing `n_common` vertices
/// (3 = identical, 2 = common edge, 1 = common vertex), following the
/// Sauter-Schwab regularising coordinate transforms. The shared vertices
/// must be the first `n_common` local vertices of both triangles, listed in
/// matching order. Weights integrate over both reference triangles (total
/// measure 1/4).
struct PairRule {
  std::vector<std::array<double, 2>> x;
  std::vector<std::array<double, 2>> y;
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
};
PairRule sauter_schwab_rule(int n_common, int order);

}  // namespace osrcbem
