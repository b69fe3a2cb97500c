// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <map>

#include "osrcbem/mesh.hpp"

namespace osrcbem {

namespace {

struct Icosahedron {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

Icosahedron unit_icosahedron() {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  Icosahedron ico;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      ico.vertices.emplace_back(0.0, s1, s2 * phi);
      ico.vertices.emplace_back(s1, s2 * phi, 0.0);
      ico.vertices.emplace_back(s2 * phi, 0.0, s1);
    }
  }
  // Faces are the vertex triples at mutual distance 2 (the edge length).
  const int n = static_cast<int>(ico.vertices.size());
  auto adjacent = [&](int a, int b) { return std::abs((ico.vertices[a] - ico.vertices[b]).norm() - 2.0) < 1e-9; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) ico.faces.push_back({i, j, k});
  for (auto& v : ico.vertices) v.normalize();
  return ico;
}

}  // namespace

TriangleMesh make_icosahedron(double radius) {
  auto ico = unit_icosahedron();
  for (auto& v : ico.vertices) v *= radius;
  return TriangleMesh(std::move(ico.vertices), std::move(ico.faces));
}

TriangleMesh make_sphere(double radius, int divisions) {
  if (divisions < 1) throw ArgumentError("sphere divisions must be >= 1");
  if (!(radius > 0.0)) throw ArgumentError("sphere radius must be positive");
  const auto ico = unit_icosahedron();
  const int d = divisions;

  // A subdivision point is a + b + c = d weights on icosahedron vertices;
  // the sorted (vertex, weight) list identifies points shared between faces.
  using Key = std::vector<std::pair<int, int>>;
  std::map<Key, int> index;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  auto vertex_id = [&](const std::array<int, 3>& f, int i, int j) {
    const int w0 = d - i - j;
    Key key;
    if (w0 > 0) key.emplace_back(f[0], w0);
    if (i > 0) key.emplace_back(f[1], i);
    if (j > 0) key.emplace_back(f[2], j);
    std::sort(key.begin(), key.end());
    auto [it, inserted] = index.try_emplace(key, static_cast<int>(vertices.size()));
    if (inserted) {
      Vec3 p = Vec3::Zero();
      for (auto [v, w] : key) p += static_cast<double>(w) * ico.vertices[v];
      vertices.push_back(radius * p.normalized());
    }
    return it->second;
  };

  for (const auto& f : ico.faces) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; i + j < d; ++j) {
        const int a = vertex_id(f, i, j);
        const int b = vertex_id(f, i + 1, j);
        const int c = vertex_id(f, i, j + 1);
        triangles.push_back({a, b, c});
        if (i + j + 2 <= d) {
          const int e = vertex_id(f, i + 1, j + 1);
          triangles.push_back({b, e, c});
        }
      }
    }
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

}  // namespace osrcbem
