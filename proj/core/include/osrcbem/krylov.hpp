// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "osrcbem/common.hpp"

namespace osrcbem {

struct LinearOperator {
  std::size_t dim = 0;
  std::function<VectorC(const VectorC&)> apply;

  VectorC operator()(const VectorC& x) const;
};

/// Wraps a dense matrix. The matrix must outlive the operator.
LinearOperator matrix_operator(const MatrixC& m);
LinearOperator identity_operator(std::size_t dim);
/// x -> outer(inner(x)).
LinearOperator compose(LinearOperator outer, LinearOperator inner);

struct GmresOptions {
  double tol = 1e-5;
  int max_iterations = 1000;
  /// Restart length; unset means no restart.
  std::optional<int> restart;
};

struct SolveReport {
  int iterations = 0;
  /// Relative residual estimate after every iteration.
  std::vector<double> residual_history;
  bool converged = false;
  bool breakdown = false;
  /// ||op(x) - rhs|| / ||rhs|| recomputed from the returned iterate.
  double true_residual = 0.0;
  double wall_time = 0.0;
};

struct GmresResult {
  VectorC x;
  SolveReport report;
};

/// GMRES with modified Gram-Schmidt Arnoldi and Givens rotations, started
/// from x = 0.
GmresResult gmres(const LinearOperator& op, const VectorC& rhs, const GmresOptions& opts = {});

/// Eigenvalues of the materialised operator sorted by real part, then
/// imaginary part. Throws DimensionError above `max_dim`.
std::vector<Complex> dense_spectrum(const LinearOperator& op, std::size_t max_dim = 500);

/// Eigenvalues of a dense matrix, sorted as in dense_spectrum.
std::vector<Complex> sorted_eigenvalues(const MatrixC& m);

}  // namespace osrcbem
