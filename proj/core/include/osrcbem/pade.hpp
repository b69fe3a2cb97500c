// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "osrcbem/common.hpp"

namespace osrcbem {

/// Rotating-branch-cut Padé approximant of sqrt(1 + z):
/// sqrt(1 + z) ~ R0 - sum_j A_j / (B_j (1 + B_j z)).
struct PadeCoefficients {
  int n_terms = 0;
  double alpha = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<Complex> A;
  std::vector<Complex> B;
  Complex C0;
  Complex R0;

  /// A_j / B_j.
  Complex beta(int j) const { return A[j] / B[j]; }
};

PadeCoefficients compute_pade(int n_terms, double alpha = kPi / 2.0);

/// Throws NumericalError when z sits on a pole (|1 + B_j z| < 1e-14).
Complex sqrt_approx(Complex z, const PadeCoefficients& c);

/// Terms with |A_j/B_j| >= tau max_k |A_k/B_k| and K = 1 - (1/R0) sum_I A_j/B_j.
/// Indices are zero-based.
struct DominantSet {
  std::vector<int> indices;
  Complex K;
};
DominantSet dominant_set(const PadeCoefficients& c, double tau = 0.1);

}  // namespace osrcbem
