// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/sparse_ops.hpp"

#include <cmath>

#include "osrcbem/quadrature.hpp"

namespace osrcbem {

Complex DampedWavenumber::at(const TriangleMesh& mesh, int t, double l1, double l2) const {
  const auto& tri = mesh.triangles()[t];
  double eps;
  if (constant_per_element) {
    eps = (epsilon[tri[0]] + epsilon[tri[1]] + epsilon[tri[2]]) / 3.0;
  } else {
    eps = (1.0 - l1 - l2) * epsilon[tri[0]] + l1 * epsilon[tri[1]] + l2 * epsilon[tri[2]];
  }
  return {kappa, eps};
}

double optimal_damping(double kappa, double radius) {
  return 0.39 * std::cbrt(kappa) * std::pow(radius, -2.0 / 3.0);
}

DampedWavenumber build_damped_wavenumber(double kappa, const CurvatureField& curvature) {
  if (!(kappa > 0.0)) throw ArgumentError("wavenumber must be positive");
  DampedWavenumber kw;
  kw.kappa = kappa;
  kw.epsilon.resize(static_cast<Eigen::Index>(curvature.radius_per_vertex.size()));
  for (std::size_t v = 0; v < curvature.radius_per_vertex.size(); ++v) {
    const double r = curvature.global_override ? *curvature.global_override : curvature.radius_per_vertex[v];
    if (!(r > 0.0)) throw ArgumentError("curvature radius must be positive");
    kw.epsilon[static_cast<Eigen::Index>(v)] = std::isinf(r) ? 0.0 : optimal_damping(kappa, r);
  }
  return kw;
}

DampedWavenumber constant_damped_wavenumber(double kappa, double epsilon, std::size_t n_vertices) {
  if (!(kappa > 0.0)) throw ArgumentError("wavenumber must be positive");
  if (epsilon < 0.0) throw ArgumentError("damping must be non-negative");
  DampedWavenumber kw;
  kw.kappa = kappa;
  kw.epsilon = VectorR::Constant(static_cast<Eigen::Index>(n_vertices), epsilon);
  return kw;
}

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Element matrices are built independently and merged in element order, so
// the result does not depend on the number of threads.
template <class LocalFn>
SparseC assemble_local(std::size_t rows, std::size_t cols, int n_elements, LocalFn&& local) {
  std::vector<std::vector<Triplet>> per_element(static_cast<std::size_t>(n_elements));
#pragma omp parallel for schedule(static)
  for (int t = 0; t < n_elements; ++t) local(t, per_element[static_cast<std::size_t>(t)]);
  std::vector<Triplet> all;
  for (auto& v : per_element) all.insert(all.end(), v.begin(), v.end());
  SparseC m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(all.begin(), all.end());
  m.makeCompressed();
  return m;
}

void check_same_mesh(const TriangleMesh& mesh, const DofSpace& s) {
  if (!s.mesh || s.mesh->n_triangles() != mesh.n_triangles() || s.mesh->n_vertices() != mesh.n_vertices()) {
    throw DimensionError(std::string(to_string(s.kind)) + " space was built on a different mesh");
  }
}

}  // namespace

SparseOperatorSet assemble_sparse_set(const TriangleMesh& mesh, const EdgeTopology& topo, const DofSpace& snc,
                                      const DofSpace& p1, const DampedWavenumber& kw,
                                      const SparseAssemblyOptions& opts) {
  check_same_mesh(mesh, snc);
  check_same_mesh(mesh, p1);
  if (snc.kind != SpaceKind::SNC) throw ArgumentError("first space must be SNC");
  if (p1.kind != SpaceKind::P1) throw ArgumentError("second space must be P1");
  if (topo.triangle_edges.size() != mesh.n_triangles()) throw DimensionError("topology does not match mesh");
  if (static_cast<std::size_t>(kw.epsilon.size()) != mesh.n_vertices()) {
    throw DimensionError("damping field size does not match vertex count");
  }
  DampedWavenumber k = kw;
  k.constant_per_element = kw.constant_per_element || opts.constant_per_element;

  const auto rule = triangle_rule(opts.quadrature_degree);
  const int nt = static_cast<int>(mesh.n_triangles());
  const std::size_t ne = snc.n_dofs;
  const std::size_t nv = p1.n_dofs;

  SparseOperatorSet ops;
  ops.G = assemble_local(ne, ne, nt, [&](int t, std::vector<Triplet>& out) {
    const double jac = 2.0 * mesh.area(t);
    Eigen::Matrix3cd loc = Eigen::Matrix3cd::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto b = evaluate_basis(snc, t, rule.points[q][0], rule.points[q][1]);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) loc(i, j) += rule.weights[q] * jac * b.values[i].dot(b.values[j]);
    }
    const auto& d = snc.local_dofs[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (d[i] >= 0 && d[j] >= 0) out.emplace_back(d[i], d[j], loc(i, j));
  });

  ops.N_eps = assemble_local(ne, ne, nt, [&](int t, std::vector<Triplet>& out) {
    const double jac = 2.0 * mesh.area(t);
    Eigen::Matrix3cd loc = Eigen::Matrix3cd::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double l1 = rule.points[q][0];
      const double l2 = rule.points[q][1];
      const auto b = evaluate_basis(snc, t, l1, l2);
      const Complex ke = k.at(mesh, t, l1, l2);
      const Complex w = rule.weights[q] * jac / (ke * ke);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) loc(i, j) += w * b.surface_curl[i] * b.surface_curl[j];
    }
    const auto& d = snc.local_dofs[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (d[i] >= 0 && d[j] >= 0) out.emplace_back(d[i], d[j], loc(i, j));
  });

  ops.K_eps = assemble_local(nv, nv, nt, [&](int t, std::vector<Triplet>& out) {
    const double jac = 2.0 * mesh.area(t);
    Eigen::Matrix3cd loc = Eigen::Matrix3cd::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double l1 = rule.points[q][0];
      const double l2 = rule.points[q][1];
      const auto b = evaluate_basis(p1, t, l1, l2);
      const Complex ke = k.at(mesh, t, l1, l2);
      const Complex w = rule.weights[q] * jac * ke * ke;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) loc(i, j) += w * b.scalars[i] * b.scalars[j];
    }
    const auto& d = p1.local_dofs[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.emplace_back(d[i], d[j], loc(i, j));
  });

  ops.L = assemble_local(ne, nv, nt, [&](int t, std::vector<Triplet>& out) {
    const double jac = 2.0 * mesh.area(t);
    Eigen::Matrix3cd loc = Eigen::Matrix3cd::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double l1 = rule.points[q][0];
      const double l2 = rule.points[q][1];
      const auto be = evaluate_basis(snc, t, l1, l2);
      const auto bv = evaluate_basis(p1, t, l1, l2);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) loc(i, j) += rule.weights[q] * jac * be.values[i].dot(bv.surface_grad[j]);
    }
    const auto& de = snc.local_dofs[t];
    const auto& dv = p1.local_dofs[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (de[i] >= 0) out.emplace_back(de[i], dv[j], loc(i, j));
  });
  return ops;
}

SparseC assemble_div_div(const TriangleMesh& mesh, const DofSpace& rwg, const DampedWavenumber& kw,
                         const SparseAssemblyOptions& opts) {
  check_same_mesh(mesh, rwg);
  if (rwg.kind != SpaceKind::RWG) throw ArgumentError("div-div assembly needs an RWG space");
  DampedWavenumber k = kw;
  k.constant_per_element = kw.constant_per_element || opts.constant_per_element;
  const auto rule = triangle_rule(opts.quadrature_degree);
  const int nt = static_cast<int>(mesh.n_triangles());
  return assemble_local(rwg.n_dofs, rwg.n_dofs, nt, [&](int t, std::vector<Triplet>& out) {
    const double jac = 2.0 * mesh.area(t);
    Eigen::Matrix3cd loc = Eigen::Matrix3cd::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double l1 = rule.points[q][0];
      const double l2 = rule.points[q][1];
      const auto b = evaluate_basis(rwg, t, l1, l2);
      const Complex ke = k.at(mesh, t, l1, l2);
      const Complex w = rule.weights[q] * jac / (ke * ke);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) loc(i, j) += w * b.surface_div[i] * b.surface_div[j];
    }
    const auto& d = rwg.local_dofs[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (d[i] >= 0 && d[j] >= 0) out.emplace_back(d[i], d[j], loc(i, j));
  });
}

SparseR assemble_p1_mass(const TriangleMesh& mesh, const DofSpace& p1, int quadrature_degree) {
  check_same_mesh(mesh, p1);
  const auto rule = triangle_rule(quadrature_degree);
  std::vector<Eigen::Triplet<double>> trips;
  for (int t = 0; t < static_cast<int>(mesh.n_triangles()); ++t) {
    const double jac = 2.0 * mesh.area(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto b = evaluate_basis(p1, t, rule.points[q][0], rule.points[q][1]);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          trips.emplace_back(b.dofs[i], b.dofs[j], rule.weights[q] * jac * b.scalars[i] * b.scalars[j]);
    }
  }
  SparseR m(static_cast<Eigen::Index>(p1.n_dofs), static_cast<Eigen::Index>(p1.n_dofs));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseR assemble_mixed_mass(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc,
                            int quadrature_degree) {
  check_same_mesh(mesh, rwg);
  check_same_mesh(mesh, snc);
  if (rwg.n_dofs != snc.n_dofs) throw DimensionError("RWG and SNC spaces differ in size");
  const auto rule = triangle_rule(quadrature_degree);
  std::vector<Eigen::Triplet<double>> trips;
  for (int t = 0; t < static_cast<int>(mesh.n_triangles()); ++t) {
    const double jac = 2.0 * mesh.area(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto br = evaluate_basis(rwg, t, rule.points[q][0], rule.points[q][1]);
      const auto bs = evaluate_basis(snc, t, rule.points[q][0], rule.points[q][1]);
      for (int i = 0; i < 3; ++i) {
        if (bs.dofs[i] < 0) continue;
        for (int j = 0; j < 3; ++j) {
          if (br.dofs[j] < 0) continue;
          trips.emplace_back(bs.dofs[i], br.dofs[j], rule.weights[q] * jac * br.values[j].dot(bs.values[i]));
        }
      }
    }
  }
  SparseR m(static_cast<Eigen::Index>(snc.n_dofs), static_cast<Eigen::Index>(rwg.n_dofs));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace osrcbem
