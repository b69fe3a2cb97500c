// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "osrcbem/quadrature.hpp"

using namespace osrcbem;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// int_T s^p t^q over the reference triangle.
double monomial_exact(int p, int q) { return factorial(p) * factorial(q) / factorial(p + q + 2); }

double integrate(const TriangleRule& rule, int p, int q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i] * std::pow(rule.points[i][0], p) * std::pow(rule.points[i][1], q);
  }
  return sum;
}

}  // namespace

class TriangleRuleDegree : public ::testing::TestWithParam<int> {};

TEST_P(TriangleRuleDegree, IntegratesMonomialsExactly) {
  const int degree = GetParam();
  const auto rule = triangle_rule(degree);
  EXPECT_GE(rule.degree, degree);
  for (int p = 0; p <= degree; ++p) {
    for (int q = 0; p + q <= degree; ++q) {
      EXPECT_NEAR(integrate(rule, p, q), monomial_exact(p, q), 1e-14) << "s^" << p << " t^" << q;
    }
  }
}

TEST_P(TriangleRuleDegree, PositiveWeightsSumToReferenceArea) {
  const auto rule = triangle_rule(GetParam());
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    EXPECT_GT(rule.weights[i], 0.0);
    const auto& x = rule.points[i];
    EXPECT_GE(x[0], 0.0);
    EXPECT_GE(x[1], 0.0);
    EXPECT_LE(x[0] + x[1], 1.0 + 1e-15);
    sum += rule.weights[i];
  }
  EXPECT_NEAR(sum, 0.5, 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Degrees, TriangleRuleDegree, ::testing::Range(1, 13));

TEST(Quadrature, DunavantDegreeSixAndEightPointCounts) {
  EXPECT_EQ(triangle_rule(6).size(), 12u);
  EXPECT_EQ(triangle_rule(8).size(), 16u);
}

TEST(Quadrature, GaussLegendreExactness) {
  for (int n = 1; n <= 12; ++n) {
    const auto rule = gauss_legendre01(n);
    ASSERT_EQ(rule.x.size(), static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rule.w[i] * std::pow(rule.x[i], k);
      EXPECT_NEAR(sum, 1.0 / (k + 1), 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Quadrature, CollapsedGaussMatchesDegree) {
  const auto rule = collapsed_gauss_rule(5);
  EXPECT_EQ(rule.size(), 25u);
  for (int p = 0; p <= 9; ++p) {
    for (int q = 0; p + q <= 8; ++q) EXPECT_NEAR(integrate(rule, p, q), monomial_exact(p, q), 1e-14);
  }
}

class SauterSchwab : public ::testing::TestWithParam<int> {};

TEST_P(SauterSchwab, WeightsSumToProductMeasure) {
  const auto rule = sauter_schwab_rule(GetParam(), 5);
  const double sum = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
  EXPECT_NEAR(sum, 0.25, 1e-13);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    EXPECT_GE(rule.x[i][0], -1e-15);
    EXPECT_GE(rule.x[i][1], -1e-15);
    EXPECT_LE(rule.x[i][0] + rule.x[i][1], 1.0 + 1e-13);
    EXPECT_GE(rule.y[i][0], -1e-15);
    EXPECT_GE(rule.y[i][1], -1e-15);
    EXPECT_LE(rule.y[i][0] + rule.y[i][1], 1.0 + 1e-13);
  }
}

TEST_P(SauterSchwab, IntegratesSmoothProductFunctions) {
  const auto rule = sauter_schwab_rule(GetParam(), 6);
  // f(x) g(y) with f = s^2 t, g = 1 + y_s^3 separates into triangle integrals.
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double f = rule.x[i][0] * rule.x[i][0] * rule.x[i][1];
    const double g = 1.0 + std::pow(rule.y[i][0], 3);
    sum += rule.weights[i] * f * g;
  }
  const double expected = monomial_exact(2, 1) * (monomial_exact(0, 0) + monomial_exact(3, 0));
  EXPECT_NEAR(sum, expected, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(SharedVertices, SauterSchwab, ::testing::Values(1, 2, 3));

TEST(Quadrature, SauterSchwabIdenticalPanelsInverseDistance) {
  // int_T int_T 1/|x - y| for the unit right triangle, computed by refining
  // the rule until stable.
  auto value = [](int order) {
    const auto rule = sauter_schwab_rule(3, order);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double dx = rule.x[i][0] - rule.y[i][0];
      const double dy = rule.x[i][1] - rule.y[i][1];
      sum += rule.weights[i] / std::hypot(dx, dy);
    }
    return sum;
  };
  EXPECT_NEAR(value(12), value(20), 1e-9);
  EXPECT_NEAR(value(8), value(20), 1e-6);
}
