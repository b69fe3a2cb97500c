// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <vector>

#include "osrcbem/mesh.hpp"

namespace osrcbem {

enum class SpaceKind { RWG, SNC, P1 };

const char* to_string(SpaceKind kind);

/// Degree-of-freedom map. Edge spaces (RWG, SNC) place one dof on every
/// interior edge, ordered by edge index; P1 places one dof on every vertex.
/// Local function k of a triangle belongs to the edge opposite local vertex k
/// (edge spaces) or to local vertex k (P1).
struct DofSpace {
  SpaceKind kind = SpaceKind::RWG;
  std::size_t n_dofs = 0;
  /// Mesh entity (edge or vertex index) of every dof.
  std::vector<int> dof_entities;
  /// Dof of every entity, or -1 for boundary edges.
  std::vector<int> entity_to_dof;
  /// Per triangle: global dof of each local function, -1 if unsupported.
  std::vector<std::array<int, 3>> local_dofs;
  /// Per triangle: +1 on T+, -1 on T- (always +1 for P1).
  std::vector<std::array<double, 3>> local_signs;
  /// Per dof edge length (edge spaces only).
  std::vector<double> edge_lengths;

  std::shared_ptr<const TriangleMesh> mesh;
  std::shared_ptr<const EdgeTopology> topology;

  bool is_edge_space() const { return kind != SpaceKind::P1; }
};

DofSpace build_space(const TriangleMesh& mesh, const EdgeTopology& topo, SpaceKind kind);

/// Local basis data of one triangle at one point. Entries for unsupported
/// local functions (dof -1) are zero.
struct BasisEval {
  std::array<int, 3> dofs{-1, -1, -1};
  /// RWG or SNC values.
  std::array<Vec3, 3> values{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  /// P1 values.
  std::array<double, 3> scalars{0.0, 0.0, 0.0};
  /// Surface divergence of RWG functions.
  std::array<double, 3> surface_div{0.0, 0.0, 0.0};
  /// Scalar surface curl of SNC functions.
  std::array<double, 3> surface_curl{0.0, 0.0, 0.0};
  /// Surface gradient of P1 functions.
  std::array<Vec3, 3> surface_grad{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
};

/// Evaluates the local functions of `element` at barycentric point
/// (1 - l1 - l2, l1, l2).
BasisEval evaluate_basis(const DofSpace& space, int element, double l1, double l2);

/// Gradient of barycentric coordinate k on triangle t.
Vec3 barycentric_gradient(const TriangleMesh& mesh, int t, int k);

}  // namespace osrcbem
