// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "osrcbem/mesh.hpp"

namespace osrcbem {

namespace {

// Next line that is neither empty nor a '#' comment.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_fail(const std::string& what) { throw MeshError("parse error: " + what); }

}  // namespace

TriangleMesh parse_off(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) parse_fail("empty OFF file");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") parse_fail("missing OFF header");
  long nv = -1, nf = -1, ne = 0;
  if (!(header >> nv)) {
    if (!next_content_line(in, line)) parse_fail("missing OFF counts");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf >> ne)) parse_fail("bad OFF counts");
  } else if (!(header >> nf)) {
    parse_fail("bad OFF counts");
  }
  if (nv <= 0 || nf <= 0) parse_fail("OFF file declares no vertices or faces");

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next_content_line(in, line)) parse_fail("truncated vertex list");
    std::istringstream ls(line);
    double x, y, z;
    if (!(ls >> x >> y >> z)) parse_fail("bad vertex line: " + line);
    vertices.emplace_back(x, y, z);
  }
  std::vector<std::array<int, 3>> triangles;
  for (long f = 0; f < nf; ++f) {
    if (!next_content_line(in, line)) parse_fail("truncated face list");
    std::istringstream ls(line);
    int n = 0;
    if (!(ls >> n) || n < 3) parse_fail("bad face line: " + line);
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (auto& v : idx) {
      if (!(ls >> v)) parse_fail("bad face line: " + line);
      if (v < 0 || v >= nv) parse_fail("face references vertex " + std::to_string(v) + " out of range");
    }
    // Polygons are split into a fan.
    for (int k = 1; k + 1 < n; ++k) triangles.push_back({idx[0], idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(k + 1)]});
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh parse_gmsh(std::istream& in) {
  std::string line;
  std::vector<Vec3> vertices;
  std::unordered_map<long, int> node_index;
  std::vector<std::array<int, 3>> triangles;
  bool have_nodes = false;
  bool have_elements = false;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "$MeshFormat") {
      if (!std::getline(in, line)) parse_fail("truncated $MeshFormat");
      std::istringstream ls(line);
      double version = 0;
      int file_type = -1;
      ls >> version >> file_type;
      if (version < 2.0 || version >= 3.0) parse_fail("only Gmsh format 2.x is supported");
      if (file_type != 0) parse_fail("only ASCII Gmsh files are supported");
    } else if (line == "$Nodes") {
      if (!std::getline(in, line)) parse_fail("truncated $Nodes");
      const long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line)) parse_fail("truncated $Nodes");
        std::istringstream ls(line);
        long id;
        double x, y, z;
        if (!(ls >> id >> x >> y >> z)) parse_fail("bad node line: " + line);
        node_index[id] = static_cast<int>(vertices.size());
        vertices.emplace_back(x, y, z);
      }
      have_nodes = true;
    } else if (line == "$Elements") {
      if (!have_nodes) parse_fail("$Elements before $Nodes");
      if (!std::getline(in, line)) parse_fail("truncated $Elements");
      const long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line)) parse_fail("truncated $Elements");
        std::istringstream ls(line);
        long id;
        int type, ntags;
        if (!(ls >> id >> type >> ntags)) parse_fail("bad element line: " + line);
        for (int k = 0; k < ntags; ++k) {
          long tag;
          ls >> tag;
        }
        if (type != 2) continue;
        std::array<int, 3> tri{};
        for (auto& v : tri) {
          long node;
          if (!(ls >> node)) parse_fail("bad triangle line: " + line);
          auto it = node_index.find(node);
          if (it == node_index.end()) parse_fail("triangle references unknown node " + std::to_string(node));
          v = it->second;
        }
        triangles.push_back(tri);
      }
      have_elements = true;
    }
  }
  if (!have_nodes || !have_elements) parse_fail("missing $Nodes or $Elements section");
  if (triangles.empty()) parse_fail("no triangles (element type 2) found");
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path.string());
  return format == MeshFormat::Off ? parse_off(in) : parse_gmsh(in);
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".off" || ext == ".OFF") return load_mesh(path, MeshFormat::Off);
  if (ext == ".msh" || ext == ".MSH") return load_mesh(path, MeshFormat::GmshAscii);
  throw MeshError("unknown mesh extension '" + ext + "' (expected .msh or .off)");
}

}  // namespace osrcbem
