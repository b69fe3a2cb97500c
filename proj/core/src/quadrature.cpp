// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/quadrature.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace osrcbem {

LineRule gauss_legendre01(int n) {
  if (n < 1) throw ArgumentError("Gauss-Legendre rule needs n >= 1");
  LineRule rule;
  rule.x.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n starting from the Tricomi estimate.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    rule.w[static_cast<std::size_t>(i)] = 0.5 * w;
  }
  return rule;
}

TriangleRule collapsed_gauss_rule(int n) {
  const auto g = gauss_legendre01(n);
  TriangleRule rule;
  rule.degree = 2 * n - 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = g.x[i];
      const double v = g.x[j];
      rule.points.push_back({u, v * (1.0 - u)});
      rule.weights.push_back(g.w[i] * g.w[j] * (1.0 - u));
    }
  }
  return rule;
}

namespace {

void add_orbit3(TriangleRule& r, double a, double w) {
  // Points with barycentrics (a, a, 1 - 2a) and permutations.
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({a, a});
  r.points.push_back({a, b});
  r.points.push_back({b, a});
  for (int k = 0; k < 3; ++k) r.weights.push_back(0.5 * w);
}

void add_orbit6(TriangleRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  for (auto [u, v] : {std::pair{a, b}, {b, a}, {a, c}, {c, a}, {b, c}, {c, b}}) {
    r.points.push_back({u, v});
    r.weights.push_back(0.5 * w);
  }
}

}  // namespace

TriangleRule triangle_rule(int degree) {
  TriangleRule r;
  switch (degree) {
    case 0:
    case 1:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5);
      r.degree = 1;
      return r;
    case 2:
      add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      r.degree = 2;
      return r;
    case 4:
      add_orbit3(r, 0.445948490915965, 0.223381589678011);
      add_orbit3(r, 0.091576213509771, 0.109951743655322);
      r.degree = 4;
      return r;
    case 5:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5 * 0.225);
      add_orbit3(r, 0.470142064105115, 0.132394152788506);
      add_orbit3(r, 0.101286507323456, 0.125939180544827);
      r.degree = 5;
      return r;
    case 6:
      add_orbit3(r, 0.249286745170910, 0.116786275726379);
      add_orbit3(r, 0.063089014491502, 0.050844906370207);
      add_orbit6(r, 0.053145049844817, 0.310352451033784, 0.082851075618374);
      r.degree = 6;
      return r;
    case 8:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5 * 0.144315607677787);
      add_orbit3(r, 0.459292588292723, 0.095091634267285);
      add_orbit3(r, 0.170569307751760, 0.103217370534718);
      add_orbit3(r, 0.050547228317031, 0.032458497623198);
      add_orbit6(r, 0.008394777409958, 0.263112829634638, 0.027230314174435);
      r.degree = 8;
      return r;
    default:
      break;
  }
  if (degree < 0) throw ArgumentError("triangle rule degree must be non-negative");
  auto rule = collapsed_gauss_rule((degree + 3) / 2);
  return rule;
}

PairRule sauter_schwab_rule(int n_common, int order) {
  if (order < 1) throw ArgumentError("Sauter-Schwab order must be >= 1");
  const auto g = gauss_legendre01(order);
  PairRule rule;
  // Points are produced in the (x1, x2) reference with 0 <= x2 <= x1 <= 1
  // and sheared to the standard triangle by (x1 - x2, x2).
  auto push = [&rule](double a1, double a2, double b1, double b2, double w) {
    rule.x.push_back({a1 - a2, a2});
    rule.y.push_back({b1 - b2, b2});
    rule.weights.push_back(w);
  };

  for (int iq = 0; iq < order; ++iq) {
    const double xi = g.x[iq];
    for (int i3 = 0; i3 < order; ++i3) {
      const double e3 = g.x[i3];
      for (int i2 = 0; i2 < order; ++i2) {
        const double e2 = g.x[i2];
        for (int i1 = 0; i1 < order; ++i1) {
          const double e1 = g.x[i1];
          const double w = g.w[iq] * g.w[i3] * g.w[i2] * g.w[i1];
          switch (n_common) {
            case 3: {
              const double lw = w * xi * xi * xi * e1 * e1 * e2;
              push(xi, xi * (1.0 - e1 + e1 * e2), xi * (1.0 - e1 * e2 * e3), xi * (1.0 - e1), lw);
              push(xi * (1.0 - e1 * e2 * e3), xi * (1.0 - e1), xi, xi * (1.0 - e1 + e1 * e2), lw);
              push(xi, xi * e1 * (1.0 - e2 + e2 * e3), xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2), lw);
              push(xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2), xi, xi * e1 * (1.0 - e2 + e2 * e3), lw);
              push(xi * (1.0 - e1 * e2 * e3), xi * e1 * (1.0 - e2 * e3), xi, xi * e1 * (1.0 - e2), lw);
              push(xi, xi * e1 * (1.0 - e2), xi * (1.0 - e1 * e2 * e3), xi * e1 * (1.0 - e2 * e3), lw);
              break;
            }
            case 2: {
              const double lw = w * xi * xi * xi * e1 * e1 * e2;
              push(xi, xi * e1 * e3, xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2), w * xi * xi * xi * e1 * e1);
              push(xi, xi * e1, xi * (1.0 - e1 * e2 * e3), xi * e1 * e2 * (1.0 - e3), lw);
              push(xi * (1.0 - e1 * e2), xi * e1 * (1.0 - e2), xi, xi * e1 * e2 * e3, lw);
              push(xi * (1.0 - e1 * e2 * e3), xi * e1 * e2 * (1.0 - e3), xi, xi * e1, lw);
              push(xi * (1.0 - e1 * e2 * e3), xi * e1 * (1.0 - e2 * e3), xi, xi * e1 * e2, lw);
              break;
            }
            case 1: {
              const double lw = w * xi * xi * xi * e2;
              push(xi, xi * e1, xi * e2, xi * e2 * e3, lw);
              push(xi * e2, xi * e2 * e3, xi, xi * e1, lw);
              break;
            }
            default:
              throw ArgumentError("Sauter-Schwab rule needs 1, 2 or 3 common vertices, got " +
                                  std::to_string(n_common));
          }
        }
      }
    }
  }
  return rule;
}

}  // namespace osrcbem
