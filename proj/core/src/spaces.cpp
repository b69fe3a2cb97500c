// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/spaces.hpp"

namespace osrcbem {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::RWG:
      return "RWG";
    case SpaceKind::SNC:
      return "SNC";
    case SpaceKind::P1:
      return "P1";
  }
  return "?";
}

DofSpace build_space(const TriangleMesh& mesh, const EdgeTopology& topo, SpaceKind kind) {
  if (topo.triangle_edges.size() != mesh.n_triangles()) {
    throw DimensionError("edge topology does not belong to this mesh");
  }
  DofSpace s;
  s.kind = kind;
  s.mesh = std::make_shared<const TriangleMesh>(mesh);
  s.topology = std::make_shared<const EdgeTopology>(topo);
  const int nt = static_cast<int>(mesh.n_triangles());
  s.local_dofs.assign(mesh.n_triangles(), {-1, -1, -1});
  s.local_signs.assign(mesh.n_triangles(), {0.0, 0.0, 0.0});

  if (kind == SpaceKind::P1) {
    s.n_dofs = mesh.n_vertices();
    s.dof_entities.resize(s.n_dofs);
    s.entity_to_dof.resize(s.n_dofs);
    for (int v = 0; v < static_cast<int>(s.n_dofs); ++v) s.dof_entities[v] = s.entity_to_dof[v] = v;
    for (int t = 0; t < nt; ++t) {
      for (int k = 0; k < 3; ++k) {
        s.local_dofs[t][k] = mesh.triangles()[t][k];
        s.local_signs[t][k] = 1.0;
      }
    }
    return s;
  }

  const int ne = static_cast<int>(topo.n_edges());
  s.entity_to_dof.assign(topo.n_edges(), -1);
  for (int e = 0; e < ne; ++e) {
    if (topo.boundary[e]) continue;
    s.entity_to_dof[e] = static_cast<int>(s.dof_entities.size());
    s.dof_entities.push_back(e);
    const auto [a, b] = topo.edges[e];
    s.edge_lengths.push_back((mesh.vertex(a) - mesh.vertex(b)).norm());
  }
  s.n_dofs = s.dof_entities.size();
  for (int e = 0; e < ne; ++e) {
    const int dof = s.entity_to_dof[e];
    if (dof < 0) continue;
    const auto& p = topo.plus[e];
    const auto& m = topo.minus[e];
    s.local_dofs[p.triangle][p.local] = dof;
    s.local_signs[p.triangle][p.local] = 1.0;
    s.local_dofs[m.triangle][m.local] = dof;
    s.local_signs[m.triangle][m.local] = -1.0;
  }
  return s;
}

Vec3 barycentric_gradient(const TriangleMesh& mesh, int t, int k) {
  const auto& tri = mesh.triangles()[t];
  const Vec3& v1 = mesh.vertex(tri[(k + 1) % 3]);
  const Vec3& v2 = mesh.vertex(tri[(k + 2) % 3]);
  return mesh.normal(t).cross(v2 - v1) / (2.0 * mesh.area(t));
}

namespace {

// Scalar surface curl of a linear tangential field v(x) = J x + c.
double linear_field_curl(const Eigen::Matrix3d& jac, const Vec3& normal) {
  const Vec3 curl(jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0), jac(1, 0) - jac(0, 1));
  return curl.dot(normal);
}

Eigen::Matrix3d cross_matrix(const Vec3& n) {
  Eigen::Matrix3d m;
  m << 0.0, -n.z(), n.y(), n.z(), 0.0, -n.x(), -n.y(), n.x(), 0.0;
  return m;
}

}  // namespace

BasisEval evaluate_basis(const DofSpace& space, int element, double l1, double l2) {
  const auto& mesh = *space.mesh;
  if (element < 0 || element >= static_cast<int>(mesh.n_triangles())) {
    throw DimensionError("element index out of range");
  }
  BasisEval out;
  out.dofs = space.local_dofs[element];
  const auto& tri = mesh.triangles()[element];
  const double bary[3] = {1.0 - l1 - l2, l1, l2};

  if (space.kind == SpaceKind::P1) {
    for (int k = 0; k < 3; ++k) {
      out.scalars[k] = bary[k];
      out.surface_grad[k] = barycentric_gradient(mesh, element, k);
    }
    return out;
  }

  const Vec3 x = mesh.point(element, l1, l2);
  const Vec3& n = mesh.normal(element);
  const double area = mesh.area(element);
  for (int k = 0; k < 3; ++k) {
    const int dof = out.dofs[k];
    if (dof < 0) continue;
    const double s = space.local_signs[element][k];
    const double l = space.edge_lengths[dof];
    const Vec3& p = mesh.vertex(tri[k]);
    const double c = s * l / (2.0 * area);
    const Vec3 rwg = c * (x - p);
    if (space.kind == SpaceKind::RWG) {
      out.values[k] = rwg;
      out.surface_div[k] = s * l / area;
    } else {
      out.values[k] = n.cross(rwg);
      out.surface_curl[k] = linear_field_curl(c * cross_matrix(n), n);
    }
  }
  return out;
}

}  // namespace osrcbem
