// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/krylov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace osrcbem {

VectorC LinearOperator::operator()(const VectorC& x) const {
  if (static_cast<std::size_t>(x.size()) != dim) throw DimensionError("operator applied to a vector of wrong size");
  VectorC y = apply(x);
  if (static_cast<std::size_t>(y.size()) != dim) throw DimensionError("operator returned a vector of wrong size");
  return y;
}

LinearOperator matrix_operator(const MatrixC& m) {
  if (m.rows() != m.cols()) throw DimensionError("operator matrix must be square");
  return {static_cast<std::size_t>(m.rows()), [&m](const VectorC& x) -> VectorC { return m * x; }};
}

LinearOperator identity_operator(std::size_t dim) {
  return {dim, [](const VectorC& x) { return x; }};
}

LinearOperator compose(LinearOperator outer, LinearOperator inner) {
  if (outer.dim != inner.dim) throw DimensionError("composed operators differ in dimension");
  const std::size_t dim = inner.dim;
  return {dim, [outer = std::move(outer), inner = std::move(inner)](const VectorC& x) { return outer(inner(x)); }};
}

namespace {

void make_rotation(Complex a, Complex b, double& c, Complex& s) {
  const double aa = std::abs(a);
  const double r = std::hypot(aa, std::abs(b));
  if (r == 0.0) {
    c = 1.0;
    s = 0.0;
  } else if (aa == 0.0) {
    c = 0.0;
    s = std::conj(b) / r;
  } else {
    c = aa / r;
    s = (a / aa) * std::conj(b) / r;
  }
}

}  // namespace

GmresResult gmres(const LinearOperator& op, const VectorC& rhs, const GmresOptions& opts) {
  if (static_cast<std::size_t>(rhs.size()) != op.dim) throw DimensionError("right-hand side size mismatch");
  if (!(opts.tol > 0.0) || !(opts.tol < 1.0)) throw ArgumentError("GMRES tolerance must lie in (0, 1)");
  if (opts.max_iterations < 1) throw ArgumentError("GMRES needs at least one iteration");
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<Eigen::Index>(op.dim);
  GmresResult out;
  out.x = VectorC::Zero(n);
  const double bnorm = rhs.norm();
  auto& rep = out.report;
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  const int m = opts.restart ? std::max(1, *opts.restart) : opts.max_iterations;

  VectorC r = rhs;
  while (rep.iterations < opts.max_iterations && !rep.converged && !rep.breakdown) {
    const double beta = r.norm();
    std::vector<VectorC> V;
    V.push_back(r / beta);
    MatrixC H = MatrixC::Zero(m + 1, m);
    std::vector<double> cs;
    std::vector<Complex> sn;
    VectorC g = VectorC::Zero(m + 1);
    g[0] = beta;
    int k = 0;
    for (; k < m && rep.iterations < opts.max_iterations; ++k) {
      VectorC w = op(V[k]);
      for (int i = 0; i <= k; ++i) {
        H(i, k) = V[i].dot(w);
        w -= H(i, k) * V[i];
      }
      const double hnext = w.norm();
      H(k + 1, k) = hnext;
      for (int i = 0; i < k; ++i) {
        const Complex hi = H(i, k);
        const Complex hi1 = H(i + 1, k);
        H(i, k) = cs[i] * hi + sn[i] * hi1;
        H(i + 1, k) = -std::conj(sn[i]) * hi + cs[i] * hi1;
      }
      double c;
      Complex s;
      make_rotation(H(k, k), H(k + 1, k), c, s);
      cs.push_back(c);
      sn.push_back(s);
      H(k, k) = c * H(k, k) + s * H(k + 1, k);
      H(k + 1, k) = 0.0;
      g[k + 1] = -std::conj(s) * g[k];
      g[k] = c * g[k];
      ++rep.iterations;
      const double res = std::abs(g[k + 1]) / bnorm;
      rep.residual_history.push_back(res);
      if (res <= opts.tol) {
        rep.converged = true;
        ++k;
        break;
      }
      if (hnext < 1e-14 * beta) {
        rep.breakdown = true;
        ++k;
        break;
      }
      V.push_back(w / hnext);
    }
    // Back substitution on the k x k triangle.
    VectorC y = VectorC::Zero(k);
    for (int i = k - 1; i >= 0; --i) {
      Complex acc = g[i];
      for (int j = i + 1; j < k; ++j) acc -= H(i, j) * y[j];
      y[i] = acc / H(i, i);
    }
    for (int i = 0; i < k; ++i) out.x += y[i] * V[i];
    r = rhs - op(out.x);
  }
  rep.true_residual = r.norm() / bnorm;
  if (rep.breakdown && rep.true_residual <= opts.tol) rep.converged = true;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<Complex> sorted_eigenvalues(const MatrixC& m) {
  Eigen::ComplexEigenSolver<MatrixC> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigenvalue solve failed");
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

std::vector<Complex> dense_spectrum(const LinearOperator& op, std::size_t max_dim) {
  if (op.dim > max_dim) {
    throw DimensionError("operator dimension " + std::to_string(op.dim) + " exceeds the dense limit " +
                         std::to_string(max_dim));
  }
  const auto n = static_cast<Eigen::Index>(op.dim);
  MatrixC m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) = op(VectorC::Unit(n, j));
  return sorted_eigenvalues(m);
}

}  // namespace osrcbem
