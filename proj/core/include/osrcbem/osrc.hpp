// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseLU>

#include "osrcbem/pade.hpp"
#include "osrcbem/sparse_ops.hpp"

namespace osrcbem {

enum class OsrcVariant { A, B };

const char* to_string(OsrcVariant v);

/// Per-apply diagnostics.
struct ApplyTrace {
  std::vector<double> phi_norms;
  /// Relative residual of every block solve, then of the final solve.
  std::vector<double> residuals;
};

/// Sparse MtE approximation. Variant A evaluates
///   r = -(G - N)^-1 (R0 y - G sum_j (A_j/B_j) phi_j)
/// where phi_j solves [[G - B_j N, B_j L], [L^T, K]] [phi; rho] = [y; 0].
/// Variant B returns -(G - N)^-1 y. All factorizations happen at build time.
class OsrcPreconditioner {
 public:
  OsrcPreconditioner(const SparseOperatorSet& ops, const PadeCoefficients& pade, OsrcVariant variant);

  VectorC apply(const VectorC& y, ApplyTrace* trace = nullptr) const;

  OsrcVariant variant() const { return variant_; }
  const PadeCoefficients& pade() const { return pade_; }
  std::size_t size() const { return n_edges_; }
  /// Block factorizations (N_p for variant A) plus the one of G - N.
  std::size_t n_factorizations() const { return blocks_.size() + 1; }
  std::size_t n_block_factorizations() const { return blocks_.size(); }
  std::size_t block_size() const { return n_edges_ + n_vertices_; }

 private:
  using Solver = Eigen::SparseLU<SparseC>;

  OsrcVariant variant_;
  PadeCoefficients pade_;
  std::size_t n_edges_ = 0;
  std::size_t n_vertices_ = 0;
  SparseC G_;
  SparseC lambda2_matrix_;
  std::shared_ptr<Solver> lambda2_;
  std::vector<SparseC> block_matrices_;
  std::vector<std::shared_ptr<Solver>> blocks_;
};

OsrcPreconditioner build_preconditioner(const SparseOperatorSet& ops, const PadeCoefficients& pade,
                                        OsrcVariant variant);

/// Dense matrix of variant A built from the Schur complements
/// G - B_j (N + L K^-1 L^T). Small meshes only.
MatrixC dense_variant_a(const SparseOperatorSet& ops, const PadeCoefficients& pade);

/// Dense matrix of variant B.
MatrixC dense_variant_b(const SparseOperatorSet& ops);

/// Dense matrix of the unapproximated square root:
/// -(G - N)^-1 G sqrt(I + J) G^-1 with J = -G^-1 (N + L K^-1 L^T).
MatrixC dense_mte(const SparseOperatorSet& ops);

}  // namespace osrcbem
