// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "osrcbem/mesh.hpp"
#include "osrcbem/spaces.hpp"
#include "osrcbem/sparse_ops.hpp"

namespace osrcbem {

enum class BemOperator { EFIE_S, MFIE_C };

/// Dense Galerkin matrix over RWG trial and SNC test functions.
struct DenseBemMatrix {
  MatrixC matrix;
  BemOperator op = BemOperator::EFIE_S;
  double kappa = 0.0;
};

/// Regular pairs pick a triangle rule by the ratio of centroid distance to
/// the larger element diameter: the first tier with ratio < max_ratio wins,
/// pairs beyond the last tier use far_degree.
struct QuadratureTier {
  double max_ratio;
  int degree;
};

struct BemQuadratureOptions {
  /// Gauss order per direction of the Sauter-Schwab rules.
  int singular_order = 6;
  std::vector<QuadratureTier> tiers{{1.5, 12}, {3.0, 8}};
  int far_degree = 6;
};

DenseBemMatrix assemble_efie(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, double kappa,
                             const BemQuadratureOptions& opts = {});

/// Principal-value part of the magnetic operator; the identity jump is the
/// mixed mass matrix and is not included.
DenseBemMatrix assemble_mfie(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, double kappa,
                             const BemQuadratureOptions& opts = {});

/// C x without storing C.
VectorC apply_mfie(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, double kappa,
                   const VectorC& x, const BemQuadratureOptions& opts = {});

/// Local 3x3 interaction blocks of one test/trial triangle pair, rows for
/// the local functions of the test triangle and columns for the trial one.
/// Signs and edge lengths are those of `rwg`; unsupported functions get
/// sign +1 and their geometric edge length.
struct PairBlocks {
  Eigen::Matrix3cd efie;
  Eigen::Matrix3cd mfie;
};
PairBlocks pair_blocks(const TriangleMesh& mesh, const DofSpace& rwg, int test, int trial, double kappa,
                       const BemQuadratureOptions& opts = {});

/// Same blocks from a tensor Gauss rule with n points per direction on each
/// triangle, ignoring singularities. Reference for well-separated pairs.
PairBlocks pair_blocks_tensor(const TriangleMesh& mesh, const DofSpace& rwg, int test, int trial, double kappa,
                              int n);

/// Incident plane wave p exp(i kappa x.d).
struct PlaneWave {
  CVec3 p = CVec3::Zero();
  Vec3 d = Vec3::UnitZ();
  double kappa = 1.0;

  /// Throws ArgumentError unless |d| = 1 and p.d = 0.
  void validate() const;
  CVec3 field(const Vec3& x) const;
};

/// RWG coefficients of the tangential trace e_inc x nu by edge-flux matching.
VectorC interpolate_tangential_trace(const TriangleMesh& mesh, const DofSpace& rwg, const PlaneWave& wave);

/// -(M_mix f / 2 + C f) for the direct formulation.
VectorC assemble_rhs(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, const PlaneWave& wave,
                     const DenseBemMatrix& C, const SparseR& mixed_mass);

/// Same right-hand side with C applied matrix-free.
VectorC assemble_rhs(const TriangleMesh& mesh, const DofSpace& rwg, const DofSpace& snc, const PlaneWave& wave,
                     const BemQuadratureOptions& opts = {});

/// -<e_inc x nu, SNC_i>, the right-hand side of the screen formulation whose
/// solution is the physical surface current.
VectorC assemble_screen_rhs(const TriangleMesh& mesh, const DofSpace& snc, const PlaneWave& wave,
                            int quadrature_degree = 5);

/// Far-field pattern of the electric potential applied to the RWG current:
/// i kappa / (4 pi) int [J - (d.J) d] exp(-i kappa d.y).
std::vector<CVec3> far_field(const TriangleMesh& mesh, const DofSpace& rwg, double kappa, const VectorC& solution,
                             const std::vector<Vec3>& directions, int quadrature_degree = 5);

/// Far-field pattern of the magnetic potential applied to a surface density:
/// i kappa / (4 pi) d x int M exp(-i kappa d.y).
/// `density(t, x)` is evaluated at quadrature points x of triangle t.
std::vector<CVec3> magnetic_far_field(const TriangleMesh& mesh, double kappa,
                                      const std::function<CVec3(int, const Vec3&)>& density,
                                      const std::vector<Vec3>& directions, int quadrature_degree = 5);

/// Scattered pattern for the direct formulation: electric far field of the
/// solution plus magnetic far field of the exact trace e_inc x nu.
std::vector<CVec3> scattered_far_field(const TriangleMesh& mesh, const DofSpace& rwg, const PlaneWave& wave,
                                       const VectorC& solution, const std::vector<Vec3>& directions);

/// 4 pi |F|^2 / |p|^2.
double rcs(const CVec3& pattern, const CVec3& polarization);

/// Directions in a plane through the z axis: (sin t cos phi, sin t sin phi, cos t).
std::vector<Vec3> directions_in_plane(const std::vector<double>& theta, double phi);

/// Greedy colouring of triangles such that no two triangles of one colour
/// share an edge.
std::vector<std::vector<int>> edge_disjoint_colouring(const TriangleMesh& mesh, const EdgeTopology& topo);

}  // namespace osrcbem
