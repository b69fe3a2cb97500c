// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/pade.hpp"

#include <algorithm>
#include <cmath>

namespace osrcbem {

PadeCoefficients compute_pade(int n_terms, double alpha) {
  if (n_terms < 1) throw ArgumentError("Padé approximant needs at least one term");
  PadeCoefficients c;
  c.n_terms = n_terms;
  c.alpha = alpha;
  const double m = 2.0 * n_terms + 1.0;
  const Complex rot = std::polar(1.0, -alpha);
  Complex sum = 0.0;
  for (int j = 1; j <= n_terms; ++j) {
    const double s = std::sin(j * kPi / m);
    const double co = std::cos(j * kPi / m);
    const double aj = 2.0 / m * s * s;
    const double bj = co * co;
    const Complex den = 1.0 + bj * (rot - 1.0);
    c.a.push_back(aj);
    c.b.push_back(bj);
    c.A.push_back(std::polar(1.0, -alpha / 2.0) * aj / (den * den));
    c.B.push_back(bj * rot / den);
    sum += aj * (rot - 1.0) / den;
  }
  c.C0 = std::polar(1.0, alpha / 2.0) * (1.0 + sum);
  c.R0 = c.C0;
  for (int j = 0; j < n_terms; ++j) c.R0 += c.beta(j);
  return c;
}

Complex sqrt_approx(Complex z, const PadeCoefficients& c) {
  Complex value = c.R0;
  for (int j = 0; j < c.n_terms; ++j) {
    const Complex den = 1.0 + c.B[j] * z;
    if (std::abs(den) < 1e-14) throw NumericalError("Padé approximant evaluated at a pole");
    value -= c.A[j] / (c.B[j] * den);
  }
  return value;
}

DominantSet dominant_set(const PadeCoefficients& c, double tau) {
  if (!(tau > 0.0) || !(tau <= 1.0)) throw ArgumentError("dominance threshold must lie in (0, 1]");
  double largest = 0.0;
  for (int j = 0; j < c.n_terms; ++j) largest = std::max(largest, std::abs(c.beta(j)));
  DominantSet out;
  Complex sum = 0.0;
  for (int j = 0; j < c.n_terms; ++j) {
    if (std::abs(c.beta(j)) >= tau * largest) {
      out.indices.push_back(j);
      sum += c.beta(j);
    }
  }
  out.K = 1.0 - sum / c.R0;
  return out;
}

}  // namespace osrcbem
