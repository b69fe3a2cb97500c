// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "osrcbem/bem.hpp"
#include "osrcbem/krylov.hpp"
#include "osrcbem/osrc.hpp"

namespace osrcbem {

/// A mesh with its topology and the three spaces every formulation uses.
struct Discretization {
  TriangleMesh mesh;
  EdgeTopology topo;
  DofSpace rwg;
  DofSpace snc;
  DofSpace p1;
  MeshStats stats;
};

Discretization discretize(TriangleMesh mesh);

enum class PreconditionerKind { None, OsrcA, OsrcB };

struct PreconditionerSpec {
  PreconditionerKind kind = PreconditionerKind::None;
  int n_terms = 2;
  double alpha = kPi / 2.0;
};

/// Accepts "none", "osrc-b", "osrc-a" (two terms) and "osrc-a(N)".
PreconditionerSpec parse_preconditioner(const std::string& text);
std::string to_string(const PreconditionerSpec& spec);

/// Curvature radius for the damping: unset means estimate per vertex.
struct DampingSpec {
  std::optional<double> radius;
  SparseAssemblyOptions assembly;
};

SparseOperatorSet osrc_operators(const Discretization& disc, double kappa, const DampingSpec& damping);

/// Preconditioner (absent for kind None) and the wall time spent on sparse
/// assembly plus factorization.
struct PreconditionerSetup {
  std::optional<OsrcPreconditioner> preconditioner;
  double seconds = 0.0;
};

PreconditionerSetup setup_preconditioner(const Discretization& disc, double kappa, const PreconditionerSpec& spec,
                                         const DampingSpec& damping);

struct EfieSolve {
  VectorC x;
  SolveReport report;
};

/// GMRES on S x = rhs, left preconditioned by `pre` when given.
EfieSolve solve_efie(const MatrixC& S, const VectorC& rhs, const OsrcPreconditioner* pre, const GmresOptions& opts);

/// Scattering angles 0..180 degrees, `count` points, in radians.
std::vector<double> angle_grid(int count);

/// Bistatic RCS of the direct-formulation solution `u` in the plane at
/// azimuth `phi` through the incident direction +z.
std::vector<double> bistatic_rcs(const Discretization& disc, const PlaneWave& wave, const VectorC& u,
                                 const std::vector<double>& theta, double phi);

struct RcsComparison {
  double relative_l2 = 0.0;
  double max_db = 0.0;
};

RcsComparison compare_rcs(const std::vector<double>& computed, const std::vector<double>& reference);

/// std / |mean| of a point cloud.
double relative_spread(const std::vector<Complex>& values);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Wall-clock stopwatch.
class Stopwatch {
 public:
  Stopwatch();
  double seconds() const;

 private:
  double start_;
};

}  // namespace osrcbem
