// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/SparseCore>

#include "osrcbem/mesh.hpp"
#include "osrcbem/spaces.hpp"

namespace osrcbem {

using SparseC = Eigen::SparseMatrix<Complex>;
using SparseR = Eigen::SparseMatrix<double>;

/// Damped wavenumber kappa + i eps(x) with eps = 0.39 kappa^(1/3) R^(-2/3).
struct DampedWavenumber {
  double kappa = 0.0;
  /// Damping per mesh vertex.
  VectorR epsilon;
  /// Use the element mean of the vertex values instead of P1 interpolation.
  bool constant_per_element = false;

  /// kappa_eps at barycentric point (1 - l1 - l2, l1, l2) of triangle t.
  Complex at(const TriangleMesh& mesh, int t, double l1, double l2) const;
};

double optimal_damping(double kappa, double radius);

DampedWavenumber build_damped_wavenumber(double kappa, const CurvatureField& curvature);

/// Same damping value at every vertex.
DampedWavenumber constant_damped_wavenumber(double kappa, double epsilon, std::size_t n_vertices);

struct SparseAssemblyOptions {
  int quadrature_degree = 4;
  bool constant_per_element = false;
};

/// G: SNC mass, N_eps: damped curl-curl, K_eps: kappa_eps^2 weighted P1 mass,
/// L: (edge dof, vertex) coupling int Grad P1_v . SNC_e.
struct SparseOperatorSet {
  SparseC G;
  SparseC N_eps;
  SparseC K_eps;
  SparseC L;

  std::size_t n_edge_dofs() const { return static_cast<std::size_t>(G.rows()); }
  std::size_t n_vertex_dofs() const { return static_cast<std::size_t>(K_eps.rows()); }
};

SparseOperatorSet assemble_sparse_set(const TriangleMesh& mesh, const EdgeTopology& topo, const DofSpace& snc,
                                      const DofSpace& p1, const DampedWavenumber& kw,
                                      const SparseAssemblyOptions& opts = {});

/// int kappa_eps^-2 Div RWG_i Div RWG_j, the divergence route to N_eps.
SparseC assemble_div_div(const TriangleMesh& mesh, const DofSpace& rwg, const DampedWavenumber& kw,
                         const SparseAssemblyOptions& opts = {});

/// Unweighted P1 mass matrix.
SparseR assemble_p1_mass(const TriangleMesh& mesh, const DofSpace& p1, int quadrature_degree = 4);

/// Mixed pairing M_ij = int RWG_j . SNC_i (SNC test rows, RWG trial columns).
SparseR assemble_mixed_mass(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc,
                            int quadrature_degree = 4);

}  // namespace osrcbem
