// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

namespace osrcbem {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey make_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Local edge k of a triangle is the edge opposite vertex k, traversed
// from vertex (k+1)%3 to (k+2)%3.
std::pair<int, int> local_edge(const std::array<int, 3>& tri, int k) {
  return {tri[(k + 1) % 3], tri[(k + 2) % 3]};
}

std::map<EdgeKey, std::vector<EdgeIncidence>> edge_map(const std::vector<std::array<int, 3>>& tris) {
  std::map<EdgeKey, std::vector<EdgeIncidence>> map;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      auto [a, b] = local_edge(tris[static_cast<std::size_t>(t)], k);
      map[make_key(a, b)].push_back({t, k});
    }
  }
  for (const auto& [key, inc] : map) {
    if (inc.size() > 2) {
      throw MeshError("non-manifold edge (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                      ") shared by " + std::to_string(inc.size()) + " triangles");
    }
  }
  return map;
}

bool traverses_forward(const std::array<int, 3>& tri, int k, int a, int b) {
  auto [u, v] = local_edge(tri, k);
  return u == a && v == b;
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (triangles_.empty()) throw MeshError("mesh has no triangles");
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& tri : triangles_) {
    for (int v : tri) {
      if (v < 0 || v >= nv) {
        throw MeshError("triangle references vertex " + std::to_string(v) + " but mesh has " + std::to_string(nv) +
                        " vertices");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw MeshError("triangle with repeated vertex index");
    }
  }

  Vec3 lo = vertices_.front();
  Vec3 hi = lo;
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double diag2 = (hi - lo).squaredNorm();

  // Orientation repair by breadth-first propagation over shared edges.
  auto map = edge_map(triangles_);
  std::vector<std::vector<std::pair<int, EdgeKey>>> neighbours(triangles_.size());
  for (const auto& [key, inc] : map) {
    if (inc.size() == 2) {
      neighbours[static_cast<std::size_t>(inc[0].triangle)].push_back({inc[1].triangle, key});
      neighbours[static_cast<std::size_t>(inc[1].triangle)].push_back({inc[0].triangle, key});
    }
  }
  std::vector<int> component(triangles_.size(), -1);
  int n_components = 0;
  for (std::size_t seed = 0; seed < triangles_.size(); ++seed) {
    if (component[seed] >= 0) continue;
    std::queue<int> queue;
    queue.push(static_cast<int>(seed));
    component[seed] = n_components;
    while (!queue.empty()) {
      const int t = queue.front();
      queue.pop();
      const auto& tri = triangles_[static_cast<std::size_t>(t)];
      for (const auto& [n, key] : neighbours[static_cast<std::size_t>(t)]) {
        // Direction in which t traverses the shared edge.
        bool t_forward = false;
        for (int k = 0; k < 3; ++k) {
          auto [a, b] = local_edge(tri, k);
          if (make_key(a, b) == key) t_forward = (a == key.first);
        }
        auto& ntri = triangles_[static_cast<std::size_t>(n)];
        bool n_forward = false;
        for (int k = 0; k < 3; ++k) {
          auto [a, b] = local_edge(ntri, k);
          if (make_key(a, b) == key) n_forward = (a == key.first);
        }
        const bool consistent = (t_forward != n_forward);
        if (component[static_cast<std::size_t>(n)] < 0) {
          if (!consistent) std::swap(ntri[1], ntri[2]);
          component[static_cast<std::size_t>(n)] = n_components;
          queue.push(n);
        } else if (!consistent) {
          throw MeshError("surface is not orientable");
        }
      }
    }
    ++n_components;
  }

  closed_ = std::all_of(map.begin(), map.end(), [](const auto& kv) { return kv.second.size() == 2; });

  // Closed components get outward normals (positive enclosed volume).
  std::vector<double> volume(static_cast<std::size_t>(n_components), 0.0);
  std::vector<bool> comp_closed(static_cast<std::size_t>(n_components), true);
  for (const auto& [key, inc] : map) {
    if (inc.size() != 2) comp_closed[static_cast<std::size_t>(component[static_cast<std::size_t>(inc[0].triangle)])] = false;
  }
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    volume[static_cast<std::size_t>(component[t])] += vertices_[static_cast<std::size_t>(tri[0])].dot(
        vertices_[static_cast<std::size_t>(tri[1])].cross(vertices_[static_cast<std::size_t>(tri[2])]));
  }
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto c = static_cast<std::size_t>(component[t]);
    if (comp_closed[c] && volume[c] < 0.0) std::swap(triangles_[t][1], triangles_[t][2]);
  }

  normals_.resize(triangles_.size());
  areas_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    const Vec3 c = (vertices_[static_cast<std::size_t>(tri[1])] - vertices_[static_cast<std::size_t>(tri[0])])
                       .cross(vertices_[static_cast<std::size_t>(tri[2])] - vertices_[static_cast<std::size_t>(tri[0])]);
    const double twice_area = c.norm();
    if (0.5 * twice_area <= 1e-12 * diag2) {
      throw MeshError("degenerate triangle " + std::to_string(t));
    }
    areas_[t] = 0.5 * twice_area;
    normals_[t] = c / twice_area;
  }
}

Vec3 TriangleMesh::centroid(int t) const {
  const auto& tri = triangles_[static_cast<std::size_t>(t)];
  return (vertex(tri[0]) + vertex(tri[1]) + vertex(tri[2])) / 3.0;
}

double TriangleMesh::diameter(int t) const {
  const auto& tri = triangles_[static_cast<std::size_t>(t)];
  return std::max({(vertex(tri[0]) - vertex(tri[1])).norm(), (vertex(tri[1]) - vertex(tri[2])).norm(),
                   (vertex(tri[2]) - vertex(tri[0])).norm()});
}

Vec3 TriangleMesh::point(int t, double l1, double l2) const {
  const auto& tri = triangles_[static_cast<std::size_t>(t)];
  const Vec3& v0 = vertex(tri[0]);
  return v0 + l1 * (vertex(tri[1]) - v0) + l2 * (vertex(tri[2]) - v0);
}

TriangleMesh TriangleMesh::scaled(double s) const {
  std::vector<Vec3> v = vertices_;
  for (auto& x : v) x *= s;
  return TriangleMesh(std::move(v), triangles_);
}

std::size_t EdgeTopology::n_boundary() const {
  return static_cast<std::size_t>(std::count(boundary.begin(), boundary.end(), true));
}

EdgeTopology build_edge_topology(const TriangleMesh& mesh) {
  const auto& tris = mesh.triangles();
  auto map = edge_map(tris);  // std::map is ordered: edges come out sorted by (a, b)

  EdgeTopology topo;
  topo.edges.reserve(map.size());
  topo.plus.reserve(map.size());
  topo.minus.reserve(map.size());
  topo.boundary.reserve(map.size());
  topo.triangle_edges.assign(tris.size(), {-1, -1, -1});

  for (const auto& [key, inc] : map) {
    const int e = static_cast<int>(topo.edges.size());
    topo.edges.push_back({key.first, key.second});
    EdgeIncidence plus;
    EdgeIncidence minus;
    for (const auto& i : inc) {
      if (traverses_forward(tris[static_cast<std::size_t>(i.triangle)], i.local, key.first, key.second)) {
        if (plus.triangle >= 0) throw MeshError("inconsistent orientation at edge " + std::to_string(e));
        plus = i;
      } else {
        if (minus.triangle >= 0) throw MeshError("inconsistent orientation at edge " + std::to_string(e));
        minus = i;
      }
      topo.triangle_edges[static_cast<std::size_t>(i.triangle)][static_cast<std::size_t>(i.local)] = e;
    }
    topo.plus.push_back(plus);
    topo.minus.push_back(minus);
    topo.boundary.push_back(inc.size() == 1);
  }
  return topo;
}

CurvatureField estimate_curvature(const TriangleMesh& mesh, std::optional<double> override_radius) {
  CurvatureField field;
  field.global_override = override_radius;
  if (override_radius) {
    if (!(*override_radius > 0.0) || !std::isfinite(*override_radius)) {
      throw ArgumentError("curvature radius override must be positive and finite");
    }
    field.radius_per_vertex.assign(mesh.n_vertices(), *override_radius);
    return field;
  }

  const std::size_t nv = mesh.n_vertices();
  std::vector<Vec3> laplace(nv, Vec3::Zero());
  std::vector<Vec3> vnormal(nv, Vec3::Zero());
  std::vector<double> mixed_area(nv, 0.0);

  for (int t = 0; t < static_cast<int>(mesh.n_triangles()); ++t) {
    const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
    const double area = mesh.area(t);
    std::array<double, 3> cot{};
    bool obtuse = false;
    int obtuse_at = -1;
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = mesh.vertex(tri[static_cast<std::size_t>(k)]);
      const Vec3 u = mesh.vertex(tri[static_cast<std::size_t>((k + 1) % 3)]) - p;
      const Vec3 v = mesh.vertex(tri[static_cast<std::size_t>((k + 2) % 3)]) - p;
      cot[static_cast<std::size_t>(k)] = u.dot(v) / u.cross(v).norm();
      if (u.dot(v) < 0.0) {
        obtuse = true;
        obtuse_at = k;
      }
    }
    for (int k = 0; k < 3; ++k) {
      // Edge opposite vertex k joins i and j with weight cot(angle at k).
      const int i = tri[static_cast<std::size_t>((k + 1) % 3)];
      const int j = tri[static_cast<std::size_t>((k + 2) % 3)];
      const Vec3 d = mesh.vertex(j) - mesh.vertex(i);
      const double w = 0.5 * cot[static_cast<std::size_t>(k)];
      laplace[static_cast<std::size_t>(i)] += w * d;
      laplace[static_cast<std::size_t>(j)] -= w * d;
    }
    // Mixed Voronoi area (Meyer et al.).
    for (int k = 0; k < 3; ++k) {
      const auto vk = static_cast<std::size_t>(tri[static_cast<std::size_t>(k)]);
      if (!obtuse) {
        const Vec3& p = mesh.vertex(tri[static_cast<std::size_t>(k)]);
        const Vec3 u = mesh.vertex(tri[static_cast<std::size_t>((k + 1) % 3)]) - p;
        const Vec3 v = mesh.vertex(tri[static_cast<std::size_t>((k + 2) % 3)]) - p;
        mixed_area[vk] += (u.squaredNorm() * cot[static_cast<std::size_t>((k + 2) % 3)] +
                           v.squaredNorm() * cot[static_cast<std::size_t>((k + 1) % 3)]) /
                          8.0;
      } else {
        mixed_area[vk] += (k == obtuse_at) ? area / 2.0 : area / 4.0;
      }
      vnormal[vk] += area * mesh.normal(t);
    }
  }

  const double h = mesh_stats(mesh).h;
  const double floor = 1e-3 / h;
  field.radius_per_vertex.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    double curvature = 0.0;
    const double nn = vnormal[v].norm();
    if (mixed_area[v] > 0.0 && nn > 0.0) {
      // Delta x = -2 H n; only the normal part is used so that flat and
      // boundary regions do not pick up tangential noise.
      curvature = std::abs(laplace[v].dot(vnormal[v] / nn)) / (2.0 * mixed_area[v]);
    }
    field.radius_per_vertex[v] = 1.0 / std::max(curvature, floor);
  }
  return field;
}

MeshStats mesh_stats(const TriangleMesh& mesh) {
  MeshStats s;
  s.n_vertices = mesh.n_vertices();
  s.n_triangles = mesh.n_triangles();
  s.h_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t < static_cast<int>(mesh.n_triangles()); ++t) {
    s.total_area += mesh.area(t);
    const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      const double l = (mesh.vertex(tri[static_cast<std::size_t>(k)]) - mesh.vertex(tri[static_cast<std::size_t>((k + 1) % 3)])).norm();
      s.h = std::max(s.h, l);
      s.h_min = std::min(s.h_min, l);
    }
  }
  std::map<EdgeKey, int> count;
  for (const auto& tri : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) ++count[make_key(tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)])];
  }
  s.n_edges = count.size();
  s.n_boundary_edges = static_cast<std::size_t>(
      std::count_if(count.begin(), count.end(), [](const auto& kv) { return kv.second == 1; }));
  s.euler_characteristic =
      static_cast<int>(s.n_vertices) - static_cast<int>(s.n_edges) + static_cast<int>(s.n_triangles);
  return s;
}

}  // namespace osrcbem
