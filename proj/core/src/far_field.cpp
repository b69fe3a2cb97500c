// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "osrcbem/bem.hpp"
#include "osrcbem/quadrature.hpp"

namespace osrcbem {

namespace {

Complex phase(double kappa, const Vec3& dir, const Vec3& y) {
  const double a = -kappa * dir.dot(y);
  return {std::cos(a), std::sin(a)};
}

CVec3 cross(const Vec3& a, const CVec3& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(), a.x() * b.y() - a.y() * b.x()};
}

Complex rdot(const Vec3& a, const CVec3& b) { return a.x() * b.x() + a.y() * b.y() + a.z() * b.z(); }

}  // namespace

std::vector<CVec3> far_field(const TriangleMesh& mesh, const DofSpace& rwg, double kappa, const VectorC& solution,
                             const std::vector<Vec3>& directions, int quadrature_degree) {
  if (rwg.kind != SpaceKind::RWG) throw ArgumentError("far field needs an RWG space");
  if (static_cast<std::size_t>(solution.size()) != rwg.n_dofs) {
    throw DimensionError("solution size does not match the RWG space");
  }
  const auto rule = triangle_rule(quadrature_degree);
  // Current density and weight at every quadrature point.
  std::vector<Vec3> ys;
  std::vector<CVec3> js;
  for (int t = 0; t < static_cast<int>(mesh.n_triangles()); ++t) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double l1 = rule.points[q][0];
      const double l2 = rule.points[q][1];
      const auto b = evaluate_basis(rwg, t, l1, l2);
      CVec3 j = CVec3::Zero();
      for (int k = 0; k < 3; ++k)
        if (b.dofs[k] >= 0) j += solution[b.dofs[k]] * b.values[k].cast<Complex>();
      ys.push_back(mesh.point(t, l1, l2));
      js.push_back(j * (rule.weights[q] * 2.0 * mesh.area(t)));
    }
  }
  std::vector<CVec3> out(directions.size());
  const Complex factor = Complex(0.0, kappa) / (4.0 * kPi);
  const int nd = static_cast<int>(directions.size());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < nd; ++k) {
    const Vec3& dir = directions[k];
    CVec3 P = CVec3::Zero();
    for (std::size_t q = 0; q < ys.size(); ++q) P += js[q] * phase(kappa, dir, ys[q]);
    out[k] = factor * (P - rdot(dir, P) * dir.cast<Complex>());
  }
  return out;
}

std::vector<CVec3> magnetic_far_field(const TriangleMesh& mesh, double kappa,
                                      const std::function<CVec3(int, const Vec3&)>& density,
                                      const std::vector<Vec3>& directions, int quadrature_degree) {
  const auto rule = triangle_rule(quadrature_degree);
  std::vector<Vec3> ys;
  std::vector<CVec3> ms;
  for (int t = 0; t < static_cast<int>(mesh.n_triangles()); ++t) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec3 y = mesh.point(t, rule.points[q][0], rule.points[q][1]);
      ys.push_back(y);
      ms.push_back(density(t, y) * (rule.weights[q] * 2.0 * mesh.area(t)));
    }
  }
  std::vector<CVec3> out(directions.size());
  const Complex factor = Complex(0.0, kappa) / (4.0 * kPi);
  const int nd = static_cast<int>(directions.size());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < nd; ++k) {
    const Vec3& dir = directions[k];
    CVec3 P = CVec3::Zero();
    for (std::size_t q = 0; q < ys.size(); ++q) P += ms[q] * phase(kappa, dir, ys[q]);
    out[k] = factor * cross(dir, P);
  }
  return out;
}

std::vector<CVec3> scattered_far_field(const TriangleMesh& mesh, const DofSpace& rwg, const PlaneWave& wave,
                                       const VectorC& solution, const std::vector<Vec3>& directions) {
  wave.validate();
  auto out = far_field(mesh, rwg, wave.kappa, solution, directions);
  const auto trace = [&](int t, const Vec3& y) -> CVec3 {
    const CVec3 e = wave.field(y);
    return -cross(mesh.normal(t), e);
  };
  const auto mag = magnetic_far_field(mesh, wave.kappa, trace, directions);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += mag[k];
  return out;
}

double rcs(const CVec3& pattern, const CVec3& polarization) {
  const double p2 = polarization.squaredNorm();
  if (p2 == 0.0) throw ArgumentError("polarization must be non-zero");
  return 4.0 * kPi * pattern.squaredNorm() / p2;
}

std::vector<Vec3> directions_in_plane(const std::vector<double>& theta, double phi) {
  std::vector<Vec3> out;
  out.reserve(theta.size());
  for (double t : theta) out.emplace_back(std::sin(t) * std::cos(phi), std::sin(t) * std::sin(phi), std::cos(t));
  return out;
}

}  // namespace osrcbem
