// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/bem.hpp"

#include <algorithm>
#include <cmath>

#include "osrcbem/quadrature.hpp"

namespace osrcbem {

namespace {

Complex rdot(const Vec3& a, const CVec3& b) { return a.x() * b.x() + a.y() * b.y() + a.z() * b.z(); }

CVec3 cross(const CVec3& a, const Vec3& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(), a.x() * b.y() - a.y() * b.x()};
}

CVec3 cross(const Vec3& a, const CVec3& b) { return -cross(b, a); }

struct TriData {
  std::array<Vec3, 3> v;
  std::array<int, 3> vid;
  Vec3 centroid;
  double area;
  double diameter;
  // sign * edge length of each local RWG function
  std::array<double, 3> sl;
};

struct Moments {
  Complex I0 = 0.0;
  CVec3 Ix = CVec3::Zero();
  CVec3 Iy = CVec3::Zero();
  Complex Ixy = 0.0;
  Complex M0 = 0.0;
  CVec3 Mx = CVec3::Zero();
  CVec3 My = CVec3::Zero();
  CVec3 Myx = CVec3::Zero();
};

class PairIntegrator {
 public:
  PairIntegrator(const TriangleMesh& mesh, const DofSpace& rwg, double kappa, const BemQuadratureOptions& opts)
      : kappa_(kappa), opts_(opts) {
    if (!(kappa > 0.0)) throw ArgumentError("wavenumber must be positive");
    const int nt = static_cast<int>(mesh.n_triangles());
    tri_.resize(mesh.n_triangles());
    for (int t = 0; t < nt; ++t) {
      auto& d = tri_[t];
      d.vid = mesh.triangles()[t];
      for (int k = 0; k < 3; ++k) d.v[k] = mesh.vertex(d.vid[k]);
      d.centroid = mesh.centroid(t);
      d.area = mesh.area(t);
      d.diameter = mesh.diameter(t);
      for (int k = 0; k < 3; ++k) {
        const int dof = rwg.local_dofs[t][k];
        if (dof >= 0) {
          d.sl[k] = rwg.local_signs[t][k] * rwg.edge_lengths[dof];
        } else {
          d.sl[k] = (d.v[(k + 1) % 3] - d.v[(k + 2) % 3]).norm();
        }
      }
    }
    for (const auto& tier : opts.tiers) rules_.push_back(triangle_rule(tier.degree));
    rules_.push_back(triangle_rule(opts.far_degree));
    points_.resize(rules_.size());
    weights_.resize(rules_.size());
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const auto& rule = rules_[r];
      points_[r].reserve(rule.size() * mesh.n_triangles());
      weights_[r].reserve(rule.size() * mesh.n_triangles());
      for (int t = 0; t < nt; ++t) {
        for (std::size_t q = 0; q < rule.size(); ++q) {
          points_[r].push_back(mesh.point(t, rule.points[q][0], rule.points[q][1]));
          weights_[r].push_back(rule.weights[q] * 2.0 * tri_[t].area);
        }
      }
    }
    for (int c = 1; c <= 3; ++c) singular_[c] = sauter_schwab_rule(c, opts.singular_order);
  }

  const TriData& tri(int t) const { return tri_[t]; }

  void blocks(int t, int s, bool efie, bool mfie, Eigen::Matrix3cd& E, Eigen::Matrix3cd& C) const {
    const auto& a = tri_[t];
    const auto& b = tri_[s];
    Moments m;
    std::array<int, 3> pa{0, 1, 2};
    std::array<int, 3> pb{0, 1, 2};
    const int n_common = common_vertices(a, b, pa, pb);
    if (n_common == 3) mfie = false;
    if (!efie && !mfie) {
      E.setZero();
      C.setZero();
      return;
    }
    if (n_common > 0) {
      const auto& rule = singular_[n_common];
      const Vec3 a0 = a.v[pa[0]], a1 = a.v[pa[1]] - a0, a2 = a.v[pa[2]] - a0;
      const Vec3 b0 = b.v[pb[0]], b1 = b.v[pb[1]] - b0, b2 = b.v[pb[2]] - b0;
      const double jac = 4.0 * a.area * b.area;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const Vec3 x = a0 + rule.x[q][0] * a1 + rule.x[q][1] * a2;
        const Vec3 y = b0 + rule.y[q][0] * b1 + rule.y[q][1] * b2;
        accumulate(x - a.centroid, y - b.centroid, x - y, rule.weights[q] * jac, efie, mfie, m);
      }
    } else {
      const int r = tier_of(a, b);
      const std::size_t nq = rules_[r].size();
      const Vec3* xs = &points_[r][t * nq];
      const Vec3* ys = &points_[r][s * nq];
      const double* wx = &weights_[r][t * nq];
      const double* wy = &weights_[r][s * nq];
      for (std::size_t i = 0; i < nq; ++i) {
        const Vec3 xt = xs[i] - a.centroid;
        for (std::size_t j = 0; j < nq; ++j) {
          accumulate(xt, ys[j] - b.centroid, xs[i] - ys[j], wx[i] * wy[j], efie, mfie, m);
        }
      }
    }
    finish(a, b, m, efie, mfie, E, C);
  }

  // Brute-force tensor rule on both triangles.
  void blocks_tensor(int t, int s, int n, Eigen::Matrix3cd& E, Eigen::Matrix3cd& C) const {
    const auto& a = tri_[t];
    const auto& b = tri_[s];
    const auto rule = collapsed_gauss_rule(n);
    Moments m;
    auto map = [](const TriData& d, const std::array<double, 2>& st) {
      return Vec3(d.v[0] + st[0] * (d.v[1] - d.v[0]) + st[1] * (d.v[2] - d.v[0]));
    };
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const Vec3 x = map(a, rule.points[i]);
      for (std::size_t j = 0; j < rule.size(); ++j) {
        const Vec3 y = map(b, rule.points[j]);
        const double w = rule.weights[i] * rule.weights[j] * 4.0 * a.area * b.area;
        accumulate(x - a.centroid, y - b.centroid, x - y, w, true, true, m);
      }
    }
    finish(a, b, m, true, true, E, C);
  }

 private:
  static int common_vertices(const TriData& a, const TriData& b, std::array<int, 3>& pa, std::array<int, 3>& pb) {
    int n = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (a.vid[i] == b.vid[j]) {
          pa[n] = i;
          pb[n] = j;
          ++n;
        }
      }
    }
    if (n == 0 || n == 3) {
      pa = {0, 1, 2};
      pb = {0, 1, 2};
      if (n == 3) pb = pa_to_pb(a, b);
      return n;
    }
    // Complete both permutations with the remaining local vertices.
    auto fill = [n](std::array<int, 3>& p) {
      int k = n;
      for (int i = 0; i < 3; ++i)
        if (std::find(p.begin(), p.begin() + n, i) == p.begin() + n) p[k++] = i;
    };
    fill(pa);
    fill(pb);
    return n;
  }

  static std::array<int, 3> pa_to_pb(const TriData& a, const TriData& b) {
    std::array<int, 3> pb{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (a.vid[i] == b.vid[j]) pb[i] = j;
    return pb;
  }

  int tier_of(const TriData& a, const TriData& b) const {
    const double ratio = (a.centroid - b.centroid).norm() / std::max(a.diameter, b.diameter);
    for (std::size_t i = 0; i < opts_.tiers.size(); ++i)
      if (ratio < opts_.tiers[i].max_ratio) return static_cast<int>(i);
    return static_cast<int>(opts_.tiers.size());
  }

  void accumulate(const Vec3& xt, const Vec3& yt, const Vec3& diff, double w, bool efie, bool mfie,
                  Moments& m) const {
    const double r = diff.norm();
    const double inv_r = 1.0 / r;
    const double kr = kappa_ * r;
    const Complex g = Complex(std::cos(kr), std::sin(kr)) * (inv_r / (4.0 * kPi));
    if (efie) {
      const Complex wg = w * g;
      m.I0 += wg;
      m.Ix += wg * xt;
      m.Iy += wg * yt;
      m.Ixy += wg * xt.dot(yt);
    }
    if (mfie) {
      const Complex wg = w * g * Complex(-inv_r, kappa_) * inv_r;
      m.M0 += wg;
      m.Mx += wg * xt;
      m.My += wg * yt;
      m.Myx += wg * yt.cross(xt);
    }
  }

  void finish(const TriData& a, const TriData& b, const Moments& m, bool efie, bool mfie, Eigen::Matrix3cd& E,
              Eigen::Matrix3cd& C) const {
    const double aa = a.area * b.area;
    const Complex ik(0.0, kappa_);
    for (int i = 0; i < 3; ++i) {
      const Vec3 pt = a.v[i] - a.centroid;
      for (int j = 0; j < 3; ++j) {
        const Vec3 qt = b.v[j] - b.centroid;
        const double c = a.sl[i] * b.sl[j];
        if (efie) {
          const Complex dot = m.Ixy - rdot(qt, m.Ix) - rdot(pt, m.Iy) + pt.dot(qt) * m.I0;
          E(i, j) = -c * (ik / (4.0 * aa) * dot + m.I0 / (ik * aa));
        } else {
          E(i, j) = 0.0;
        }
        if (mfie) {
          const CVec3 v = m.Myx - cross(m.My, pt) - cross(qt, m.Mx) + m.M0 * qt.cross(pt).cast<Complex>();
          C(i, j) = -c / (4.0 * aa) * rdot(a.v[i] - b.v[j], v);
        } else {
          C(i, j) = 0.0;
        }
      }
    }
  }

  double kappa_;
  BemQuadratureOptions opts_;
  std::vector<TriData> tri_;
  std::vector<TriangleRule> rules_;
  std::vector<std::vector<Vec3>> points_;
  std::vector<std::vector<double>> weights_;
  PairRule singular_[4];
};

void check_spaces(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc) {
  if (rwg.kind != SpaceKind::RWG || snc.kind != SpaceKind::SNC) {
    throw ArgumentError("expected an RWG trial space and an SNC test space");
  }
  if (rwg.n_dofs != snc.n_dofs) throw DimensionError("RWG and SNC spaces differ in size");
  if (!rwg.mesh || rwg.mesh->n_triangles() != mesh.n_triangles()) {
    throw DimensionError("space was built on a different mesh");
  }
}

// Visits all (test, trial) triangle pairs. Test triangles of one colour
// never share a dof, so rows can be written without synchronisation and
// the summation order is fixed regardless of the thread count.
template <class Visit>
void for_all_pairs(const TriangleMesh& mesh, const DofSpace& rwg, Visit&& visit) {
  const auto colours = edge_disjoint_colouring(mesh, *rwg.topology);
  const int nt = static_cast<int>(mesh.n_triangles());
  for (const auto& colour : colours) {
    const int n = static_cast<int>(colour.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (int k = 0; k < n; ++k) {
      const int t = colour[k];
      for (int s = 0; s < nt; ++s) visit(t, s);
    }
  }
}

}  // namespace

std::vector<std::vector<int>> edge_disjoint_colouring(const TriangleMesh& mesh, const EdgeTopology& topo) {
  const int nt = static_cast<int>(mesh.n_triangles());
  std::vector<int> colour(mesh.n_triangles(), -1);
  std::vector<std::vector<int>> classes;
  for (int t = 0; t < nt; ++t) {
    unsigned used = 0;
    for (int e : topo.triangle_edges[t]) {
      for (const auto* inc : {&topo.plus[e], &topo.minus[e]}) {
        if (inc->triangle >= 0 && inc->triangle != t && colour[inc->triangle] >= 0) {
          used |= 1u << colour[inc->triangle];
        }
      }
    }
    int c = 0;
    while (used & (1u << c)) ++c;
    colour[t] = c;
    if (c >= static_cast<int>(classes.size())) classes.resize(static_cast<std::size_t>(c) + 1);
    classes[c].push_back(t);
  }
  return classes;
}

PairBlocks pair_blocks(const TriangleMesh& mesh, const DofSpace& rwg, int test, int trial, double kappa,
                       const BemQuadratureOptions& opts) {
  PairIntegrator integ(mesh, rwg, kappa, opts);
  PairBlocks out;
  integ.blocks(test, trial, true, true, out.efie, out.mfie);
  return out;
}

PairBlocks pair_blocks_tensor(const TriangleMesh& mesh, const DofSpace& rwg, int test, int trial, double kappa,
                              int n) {
  PairIntegrator integ(mesh, rwg, kappa, BemQuadratureOptions{1, {}, 1});
  PairBlocks out;
  integ.blocks_tensor(test, trial, n, out.efie, out.mfie);
  return out;
}

DenseBemMatrix assemble_efie(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, double kappa,
                             const BemQuadratureOptions& opts) {
  check_spaces(mesh, rwg, snc);
  PairIntegrator integ(mesh, rwg, kappa, opts);
  const auto n = static_cast<Eigen::Index>(rwg.n_dofs);
  DenseBemMatrix out;
  out.op = BemOperator::EFIE_S;
  out.kappa = kappa;
  out.matrix = MatrixC::Zero(n, n);
  auto& A = out.matrix;
  for_all_pairs(mesh, rwg, [&](int t, int s) {
    const auto& dt = snc.local_dofs[t];
    const auto& ds = rwg.local_dofs[s];
    Eigen::Matrix3cd E, C;
    integ.blocks(t, s, true, false, E, C);
    for (int i = 0; i < 3; ++i) {
      if (dt[i] < 0) continue;
      for (int j = 0; j < 3; ++j)
        if (ds[j] >= 0) A(dt[i], ds[j]) += E(i, j);
    }
  });
  return out;
}

DenseBemMatrix assemble_mfie(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, double kappa,
                             const BemQuadratureOptions& opts) {
  check_spaces(mesh, rwg, snc);
  PairIntegrator integ(mesh, rwg, kappa, opts);
  const auto n = static_cast<Eigen::Index>(rwg.n_dofs);
  DenseBemMatrix out;
  out.op = BemOperator::MFIE_C;
  out.kappa = kappa;
  out.matrix = MatrixC::Zero(n, n);
  auto& A = out.matrix;
  for_all_pairs(mesh, rwg, [&](int t, int s) {
    const auto& dt = snc.local_dofs[t];
    const auto& ds = rwg.local_dofs[s];
    Eigen::Matrix3cd E, C;
    integ.blocks(t, s, false, true, E, C);
    for (int i = 0; i < 3; ++i) {
      if (dt[i] < 0) continue;
      for (int j = 0; j < 3; ++j)
        if (ds[j] >= 0) A(dt[i], ds[j]) += C(i, j);
    }
  });
  return out;
}

VectorC apply_mfie(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, double kappa,
                   const VectorC& x, const BemQuadratureOptions& opts) {
  check_spaces(mesh, rwg, snc);
  if (static_cast<std::size_t>(x.size()) != rwg.n_dofs) throw DimensionError("vector size does not match space");
  PairIntegrator integ(mesh, rwg, kappa, opts);
  VectorC y = VectorC::Zero(x.size());
  for_all_pairs(mesh, rwg, [&](int t, int s) {
    const auto& dt = snc.local_dofs[t];
    const auto& ds = rwg.local_dofs[s];
    if (dt[0] < 0 && dt[1] < 0 && dt[2] < 0) return;
    if (ds[0] < 0 && ds[1] < 0 && ds[2] < 0) return;
    Eigen::Matrix3cd E, C;
    integ.blocks(t, s, false, true, E, C);
    for (int i = 0; i < 3; ++i) {
      if (dt[i] < 0) continue;
      for (int j = 0; j < 3; ++j)
        if (ds[j] >= 0) y[dt[i]] += C(i, j) * x[ds[j]];
    }
  });
  return y;
}

void PlaneWave::validate() const {
  if (!(kappa > 0.0)) throw ArgumentError("wavenumber must be positive");
  if (std::abs(d.norm() - 1.0) > 1e-10) throw ArgumentError("plane-wave direction must be a unit vector");
  const Complex pd = p.x() * d.x() + p.y() * d.y() + p.z() * d.z();
  if (std::abs(pd) > 1e-10 * std::max(1.0, p.norm())) {
    throw ArgumentError("polarization must be orthogonal to the propagation direction");
  }
}

CVec3 PlaneWave::field(const Vec3& x) const {
  const double phase = kappa * x.dot(d);
  return p * Complex(std::cos(phase), std::sin(phase));
}

VectorC interpolate_tangential_trace(const TriangleMesh& mesh, const DofSpace& rwg, const PlaneWave& wave) {
  wave.validate();
  if (rwg.kind != SpaceKind::RWG) throw ArgumentError("trace interpolation needs an RWG space");
  const auto& topo = *rwg.topology;
  const auto gl = gauss_legendre01(4);
  VectorC f(static_cast<Eigen::Index>(rwg.n_dofs));
  for (std::size_t i = 0; i < rwg.n_dofs; ++i) {
    const int e = rwg.dof_entities[i];
    const auto& plus = topo.plus[e];
    const int t = plus.triangle;
    const auto& tri = mesh.triangles()[t];
    const Vec3& p = mesh.vertex(tri[plus.local]);
    const Vec3& a = mesh.vertex(tri[(plus.local + 1) % 3]);
    const Vec3& b = mesh.vertex(tri[(plus.local + 2) % 3]);
    const Vec3 tangent = (b - a).normalized();
    Vec3 m = a - p;
    m -= m.dot(tangent) * tangent;
    m.normalize();
    const Vec3& n = mesh.normal(t);
    // (e x n) . m over the edge, divided by its length
    Complex flux = 0.0;
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const Vec3 x = a + gl.x[q] * (b - a);
      const CVec3 e_inc = wave.field(x);
      flux += gl.w[q] * rdot(n.cross(m), e_inc);
    }
    f[static_cast<Eigen::Index>(i)] = flux;
  }
  return f;
}

VectorC assemble_rhs(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, const PlaneWave& wave,
                     const DenseBemMatrix& C, const SparseR& mixed_mass) {
  check_spaces(mesh, rwg, snc);
  const auto n = static_cast<Eigen::Index>(rwg.n_dofs);
  if (C.matrix.rows() != n || C.matrix.cols() != n || mixed_mass.rows() != n || mixed_mass.cols() != n) {
    throw DimensionError("operator sizes do not match the spaces");
  }
  const VectorC f = interpolate_tangential_trace(mesh, rwg, wave);
  return -(0.5 * (mixed_mass.cast<Complex>() * f) + C.matrix * f);
}

VectorC assemble_rhs(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, const PlaneWave& wave,
                     const BemQuadratureOptions& opts) {
  check_spaces(mesh, rwg, snc);
  const VectorC f = interpolate_tangential_trace(mesh, rwg, wave);
  const SparseR M = assemble_mixed_mass(mesh, rwg, snc);
  return -(0.5 * (M.cast<Complex>() * f) + apply_mfie(mesh, rwg, snc, wave.kappa, f, opts));
}

VectorC assemble_screen_rhs(const TriangleMesh& mesh, const DofSpace& snc, const PlaneWave& wave,
                            int quadrature_degree) {
  wave.validate();
  if (snc.kind != SpaceKind::SNC) throw ArgumentError("screen right-hand side needs an SNC space");
  const auto rule = triangle_rule(quadrature_degree);
  VectorC rhs = VectorC::Zero(static_cast<Eigen::Index>(snc.n_dofs));
  for (int t = 0; t < static_cast<int>(mesh.n_triangles()); ++t) {
    const Vec3& n = mesh.normal(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double l1 = rule.points[q][0];
      const double l2 = rule.points[q][1];
      const auto b = evaluate_basis(snc, t, l1, l2);
      const CVec3 e = wave.field(mesh.point(t, l1, l2));
      const CVec3 f = cross(e, n);
      const double w = rule.weights[q] * 2.0 * mesh.area(t);
      for (int k = 0; k < 3; ++k)
        if (b.dofs[k] >= 0) rhs[b.dofs[k]] -= w * rdot(b.values[k], f);
    }
  }
  return rhs;
}

}  // namespace osrcbem
