// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <vector>

#include "osrcbem/common.hpp"

namespace osrcbem {

/// Oriented flat-triangle surface. Triangle winding defines the unit normal
/// by the right-hand rule; on closed surfaces the normal points outward.
class TriangleMesh {
 public:
  TriangleMesh() = default;

  /// Validates indices and areas, then repairs inconsistent winding by
  /// propagating orientation across shared edges. Closed surfaces are
  /// oriented so that the enclosed signed volume is positive.
  /// Throws MeshError on bad indices, degenerate triangles, non-manifold
  /// edges or non-orientable surfaces.
  TriangleMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  std::size_t n_vertices() const { return vertices_.size(); }
  std::size_t n_triangles() const { return triangles_.size(); }

  const Vec3& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const Vec3& normal(int t) const { return normals_[static_cast<std::size_t>(t)]; }
  double area(int t) const { return areas_[static_cast<std::size_t>(t)]; }
  Vec3 centroid(int t) const;
  /// Longest edge of triangle t.
  double diameter(int t) const;

  /// Physical point for barycentric coordinates (l0, l1, l2).
  Vec3 point(int t, double l1, double l2) const;

  /// True if every edge is shared by exactly two triangles.
  bool is_closed() const { return closed_; }

  /// Returns a copy with every vertex multiplied by s.
  TriangleMesh scaled(double s) const;

 private:
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Vec3> normals_;
  std::vector<double> areas_;
  bool closed_ = false;
};

/// One incident triangle of an edge together with the local position of the
/// edge inside it (the edge opposite local vertex `local`).
struct EdgeIncidence {
  int triangle = -1;
  int local = -1;
};

/// Undirected edges stored as (a, b) with a < b, sorted lexicographically.
/// `plus` is the triangle that traverses a -> b in its winding, `minus` the
/// one traversing b -> a. Boundary edges have only one of the two set.
struct EdgeTopology {
  std::vector<std::array<int, 2>> edges;
  std::vector<EdgeIncidence> plus;
  std::vector<EdgeIncidence> minus;
  std::vector<bool> boundary;
  /// Per triangle, global edge index opposite each local vertex.
  std::vector<std::array<int, 3>> triangle_edges;

  std::size_t n_edges() const { return edges.size(); }
  std::size_t n_boundary() const;
};

struct CurvatureField {
  std::vector<double> radius_per_vertex;
  std::optional<double> global_override;
};

struct MeshStats {
  double h = 0.0;
  double h_min = 0.0;
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t n_triangles = 0;
  std::size_t n_boundary_edges = 0;
  double total_area = 0.0;
  int euler_characteristic = 0;
};

enum class MeshFormat { GmshAscii, Off };

/// Reads Gmsh ASCII v2 (`$Nodes`/`$Elements`, element type 2) or OFF.
TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
/// Picks the format from the extension (.msh or .off).
TriangleMesh load_mesh(const std::filesystem::path& path);

TriangleMesh parse_off(std::istream& in);
TriangleMesh parse_gmsh(std::istream& in);

/// Throws MeshError if an edge has more than two incident triangles.
EdgeTopology build_edge_topology(const TriangleMesh& mesh);

/// Per-vertex curvature radius from the cotangent-Laplacian mean curvature,
/// clamped so that radii never exceed 1e3 * h. With an override every radius
/// equals the override.
CurvatureField estimate_curvature(const TriangleMesh& mesh, std::optional<double> override_radius = {});

MeshStats mesh_stats(const TriangleMesh& mesh);

/// Geodesic sphere: every icosahedron edge split into `divisions` segments,
/// vertices projected to the sphere. 20 d^2 triangles, 30 d^2 edges.
TriangleMesh make_sphere(double radius, int divisions);

/// Regular icosahedron inscribed in a sphere of the given radius.
TriangleMesh make_icosahedron(double radius = 1.0);

}  // namespace osrcbem
