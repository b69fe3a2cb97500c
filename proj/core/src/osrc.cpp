// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/osrc.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Dense>

namespace osrcbem {

const char* to_string(OsrcVariant v) { return v == OsrcVariant::A ? "osrc-a" : "osrc-b"; }

namespace {

template <class Solver>
void factorize_checked(Solver& solver, const SparseC& m, const char* what) {
  solver.analyzePattern(m);
  solver.factorize(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(std::string("sparse factorization of ") + what + " failed: " + solver.lastErrorMessage());
  }
  // A probe solve catches near-singular pivots that the factorization accepts.
  const VectorC probe = VectorC::Ones(m.rows());
  const VectorC x = solver.solve(probe);
  const double res = (m * x - probe).norm() / probe.norm();
  if (!x.allFinite() || !(res < 1e-8)) {
    throw NumericalError(std::string("sparse factorization of ") + what + " is numerically singular");
  }
}

SparseC block_matrix(const SparseOperatorSet& ops, Complex Bj) {
  const auto ne = ops.G.rows();
  const auto nv = ops.K_eps.rows();
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(ops.G.nonZeros() + ops.N_eps.nonZeros() + 2 * ops.L.nonZeros() +
                                         ops.K_eps.nonZeros()));
  const SparseC top_left = ops.G - Bj * ops.N_eps;
  for (int k = 0; k < top_left.outerSize(); ++k)
    for (SparseC::InnerIterator it(top_left, k); it; ++it) trips.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < ops.L.outerSize(); ++k) {
    for (SparseC::InnerIterator it(ops.L, k); it; ++it) {
      trips.emplace_back(it.row(), ne + it.col(), Bj * it.value());
      trips.emplace_back(ne + it.col(), it.row(), it.value());
    }
  }
  for (int k = 0; k < ops.K_eps.outerSize(); ++k)
    for (SparseC::InnerIterator it(ops.K_eps, k); it; ++it)
      trips.emplace_back(ne + it.row(), ne + it.col(), it.value());
  SparseC m(ne + nv, ne + nv);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

void check_ops(const SparseOperatorSet& ops) {
  const auto ne = ops.G.rows();
  const auto nv = ops.K_eps.rows();
  if (ops.G.cols() != ne || ops.N_eps.rows() != ne || ops.N_eps.cols() != ne || ops.K_eps.cols() != nv ||
      ops.L.rows() != ne || ops.L.cols() != nv) {
    throw DimensionError("inconsistent sparse operator dimensions");
  }
}

}  // namespace

OsrcPreconditioner::OsrcPreconditioner(const SparseOperatorSet& ops, const PadeCoefficients& pade,
                                       OsrcVariant variant)
    : variant_(variant), pade_(pade) {
  check_ops(ops);
  n_edges_ = static_cast<std::size_t>(ops.G.rows());
  n_vertices_ = static_cast<std::size_t>(ops.K_eps.rows());
  G_ = ops.G;
  lambda2_matrix_ = ops.G - ops.N_eps;
  lambda2_matrix_.makeCompressed();
  lambda2_ = std::make_shared<Solver>();
  factorize_checked(*lambda2_, lambda2_matrix_, "G - N");
  if (variant == OsrcVariant::B) return;

  if (pade.n_terms < 1) throw ArgumentError("variant A needs Padé coefficients");
  const int n = pade.n_terms;
  block_matrices_.resize(static_cast<std::size_t>(n));
  blocks_.resize(static_cast<std::size_t>(n));
  std::vector<std::string> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < n; ++j) {
    try {
      block_matrices_[j] = block_matrix(ops, pade.B[j]);
      blocks_[j] = std::make_shared<Solver>();
      factorize_checked(*blocks_[j], block_matrices_[j], "the Padé block system");
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw NumericalError(e);
}

VectorC OsrcPreconditioner::apply(const VectorC& y, ApplyTrace* trace) const {
  if (static_cast<std::size_t>(y.size()) != n_edges_) throw DimensionError("vector size does not match operator");
  const double ynorm = y.norm();
  if (trace) {
    trace->phi_norms.clear();
    trace->residuals.clear();
  }
  VectorC w;
  if (variant_ == OsrcVariant::B) {
    w = y;
  } else {
    const int n = pade_.n_terms;
    std::vector<VectorC> phi(static_cast<std::size_t>(n));
    std::vector<double> res(static_cast<std::size_t>(n), 0.0);
    VectorC rhs = VectorC::Zero(static_cast<Eigen::Index>(n_edges_ + n_vertices_));
    rhs.head(y.size()) = y;
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 0; j < n; ++j) {
      const VectorC x = blocks_[j]->solve(rhs);
      phi[j] = x.head(static_cast<Eigen::Index>(n_edges_));
      if (trace && ynorm > 0.0) res[j] = (block_matrices_[j] * x - rhs).norm() / ynorm;
    }
    VectorC sum = VectorC::Zero(y.size());
    for (int j = 0; j < n; ++j) sum += pade_.beta(j) * phi[j];
    w = pade_.R0 * y - G_ * sum;
    if (trace) {
      for (int j = 0; j < n; ++j) trace->phi_norms.push_back(phi[j].norm());
      trace->residuals = res;
    }
  }
  const VectorC r3 = lambda2_->solve(w);
  if (trace) {
    const double wn = w.norm();
    trace->residuals.push_back(wn > 0.0 ? (lambda2_matrix_ * r3 - w).norm() / wn : 0.0);
  }
  return -r3;
}

OsrcPreconditioner build_preconditioner(const SparseOperatorSet& ops, const PadeCoefficients& pade,
                                        OsrcVariant variant) {
  return OsrcPreconditioner(ops, pade, variant);
}

namespace {

// N + L K^-1 L^T as a dense matrix.
MatrixC dense_t(const SparseOperatorSet& ops) {
  const MatrixC K = MatrixC(ops.K_eps);
  const MatrixC L = MatrixC(ops.L);
  const MatrixC KinvLt = K.partialPivLu().solve(L.transpose());
  return MatrixC(ops.N_eps) + L * KinvLt;
}

}  // namespace

MatrixC dense_variant_a(const SparseOperatorSet& ops, const PadeCoefficients& pade) {
  check_ops(ops);
  const MatrixC G = MatrixC(ops.G);
  const MatrixC T = dense_t(ops);
  const auto n = G.rows();
  MatrixC sum = MatrixC::Zero(n, n);
  for (int j = 0; j < pade.n_terms; ++j) {
    const MatrixC Pi = G - pade.B[j] * T;
    sum += pade.beta(j) * Pi.partialPivLu().inverse();
  }
  const MatrixC inner = pade.R0 * MatrixC::Identity(n, n) - G * sum;
  const MatrixC GmN = G - MatrixC(ops.N_eps);
  return -GmN.partialPivLu().solve(inner);
}

MatrixC dense_variant_b(const SparseOperatorSet& ops) {
  check_ops(ops);
  const MatrixC GmN = MatrixC(ops.G) - MatrixC(ops.N_eps);
  return -GmN.partialPivLu().inverse();
}

MatrixC dense_mte(const SparseOperatorSet& ops) {
  check_ops(ops);
  const MatrixC G = MatrixC(ops.G);
  const auto n = G.rows();
  const auto Glu = G.partialPivLu();
  const MatrixC J = -Glu.solve(dense_t(ops));
  const MatrixC root = (MatrixC::Identity(n, n) + J).sqrt();
  const MatrixC GmN = G - MatrixC(ops.N_eps);
  return -GmN.partialPivLu().solve(G * root * Glu.inverse());
}

}  // namespace osrcbem
