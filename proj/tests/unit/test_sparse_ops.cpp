// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <limits>

#include <Eigen/Dense>

#include "osrcbem/sparse_ops.hpp"
#include "test_util.hpp"

using namespace osrcbem;
using osrcbem::test::data_path;

namespace {

struct Setup {
  TriangleMesh mesh;
  EdgeTopology topo;
  DofSpace rwg;
  DofSpace snc;
  DofSpace p1;
};

Setup make_setup(TriangleMesh mesh) {
  Setup s;
  s.mesh = std::move(mesh);
  s.topo = build_edge_topology(s.mesh);
  s.rwg = build_space(s.mesh, s.topo, SpaceKind::RWG);
  s.snc = build_space(s.mesh, s.topo, SpaceKind::SNC);
  s.p1 = build_space(s.mesh, s.topo, SpaceKind::P1);
  return s;
}

double sparse_diff(const SparseC& a, const SparseC& b) { return MatrixC(a - b).norm(); }

}  // namespace

TEST(SparseOps, OptimalDampingValues) {
  EXPECT_NEAR(optimal_damping(kPi, 1.0), 0.571190836148994, 1e-14);
  EXPECT_NEAR(optimal_damping(8.0 * kPi, 1.0), 1.142381672297988, 1e-14);
  EXPECT_LT(optimal_damping(kPi, 1e12), 1e-7);
}

TEST(SparseOps, InfiniteRadiusGivesZeroDamping) {
  CurvatureField c;
  c.radius_per_vertex = {1.0, std::numeric_limits<double>::infinity()};
  const auto kw = build_damped_wavenumber(2.0, c);
  EXPECT_NEAR(kw.epsilon[0], optimal_damping(2.0, 1.0), 1e-15);
  EXPECT_EQ(kw.epsilon[1], 0.0);
  EXPECT_THROW(build_damped_wavenumber(-1.0, c), ArgumentError);
  EXPECT_THROW(constant_damped_wavenumber(1.0, -0.1, 3), ArgumentError);
}

TEST(SparseOps, TwoTriangleCurlCurlByHand) {
  const auto s = make_setup(load_mesh(data_path("two_triangles.off")));
  const double kappa = 2.0;
  const auto kw = constant_damped_wavenumber(kappa, 0.0, s.mesh.n_vertices());
  const auto ops = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw);
  ASSERT_EQ(ops.N_eps.rows(), 1);
  const double l2 = 2.0;
  const double expected = (l2 / 0.5 + l2 / 0.5) / (kappa * kappa);
  EXPECT_NEAR(ops.N_eps.coeff(0, 0).real(), expected, 1e-13);
  EXPECT_NEAR(ops.N_eps.coeff(0, 0).imag(), 0.0, 1e-15);
}

TEST(SparseOps, MassMatrixSymmetricPositiveDefinite) {
  const auto s = make_setup(make_sphere(1.0, 3));
  const auto kw = build_damped_wavenumber(kPi, estimate_curvature(s.mesh, 1.0));
  const auto ops = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw);
  const MatrixC G(ops.G);
  EXPECT_LT((G - G.transpose()).norm(), 1e-14 * G.norm());
  EXPECT_LT(G.imag().norm(), 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G.real());
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
  const MatrixC N(ops.N_eps);
  EXPECT_LT((N - N.transpose()).norm(), 1e-13 * N.norm());
}

TEST(SparseOps, ConstantDampingScalesP1Mass) {
  const auto s = make_setup(make_sphere(1.0, 2));
  const double eps = 0.3;
  const auto kw = constant_damped_wavenumber(kPi, eps, s.mesh.n_vertices());
  const auto ops = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw);
  const SparseR mass = assemble_p1_mass(s.mesh, s.p1);
  const Complex ke = Complex(kPi, eps);
  const SparseC expected = mass.cast<Complex>() * (ke * ke);
  EXPECT_LT(sparse_diff(ops.K_eps, expected), 1e-12 * MatrixC(expected).norm());
  double area = 0.0;
  for (int t = 0; t < static_cast<int>(s.mesh.n_triangles()); ++t) area += s.mesh.area(t);
  EXPECT_NEAR(Eigen::MatrixXd(mass).sum(), area, 1e-12);
}

TEST(SparseOps, GradientCouplingAnnihilatesConstants) {
  const auto s = make_setup(make_sphere(1.0, 3));
  const auto kw = constant_damped_wavenumber(kPi, 0.1, s.mesh.n_vertices());
  const auto ops = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw);
  EXPECT_EQ(ops.L.rows(), static_cast<Eigen::Index>(s.snc.n_dofs));
  EXPECT_EQ(ops.L.cols(), static_cast<Eigen::Index>(s.p1.n_dofs));
  const VectorC ones = VectorC::Ones(ops.L.cols());
  EXPECT_LT((ops.L * ones).norm(), 1e-13);
}

TEST(SparseOps, CurlCurlEqualsDivDiv) {
  const auto s = make_setup(make_sphere(1.0, 3));
  const auto kw = build_damped_wavenumber(kPi, estimate_curvature(s.mesh));
  const auto ops = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw);
  const SparseC dd = assemble_div_div(s.mesh, s.rwg, kw);
  EXPECT_LT(sparse_diff(ops.N_eps, dd), 1e-12 * MatrixC(dd).norm());
}

TEST(SparseOps, ElementConstantDampingIsQuadratureIndependent) {
  const auto s = make_setup(make_sphere(1.0, 2));
  const auto kw = build_damped_wavenumber(kPi, estimate_curvature(s.mesh));
  SparseAssemblyOptions low{4, true};
  SparseAssemblyOptions high{8, true};
  const auto a = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw, low);
  const auto b = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw, high);
  EXPECT_LT(sparse_diff(a.N_eps, b.N_eps), 1e-10 * MatrixC(b.N_eps).norm());
  EXPECT_LT(sparse_diff(a.G, b.G), 1e-12 * MatrixC(b.G).norm());
  EXPECT_LT(sparse_diff(a.L, b.L), 1e-12 * MatrixC(b.L).norm());
}

TEST(SparseOps, SparsityFollowsTopology) {
  const auto s = make_setup(make_sphere(1.0, 3));
  const auto kw = constant_damped_wavenumber(kPi, 0.1, s.mesh.n_vertices());
  const auto ops = assemble_sparse_set(s.mesh, s.topo, s.snc, s.p1, kw);
  // Each edge couples to itself and the four other edges of its two triangles.
  for (Eigen::Index r = 0; r < ops.G.outerSize(); ++r) {
    EXPECT_LE(ops.G.outerIndexPtr()[r + 1] - ops.G.outerIndexPtr()[r], 5);
  }
  EXPECT_LE(ops.G.nonZeros(), 5 * ops.G.rows());
}

TEST(SparseOps, MixedMassPairsRotatedFunctions) {
  const auto s = make_setup(make_sphere(1.0, 2));
  const SparseR m = assemble_mixed_mass(s.mesh, s.rwg, s.snc);
  EXPECT_EQ(m.rows(), static_cast<Eigen::Index>(s.snc.n_dofs));
  const Eigen::MatrixXd dense(m);
  // int RWG_i . (n x RWG_i) = 0.
  for (Eigen::Index i = 0; i < dense.rows(); ++i) EXPECT_NEAR(dense(i, i), 0.0, 1e-14);
  EXPECT_LT((dense + dense.transpose()).norm(), 1e-13);
}

TEST(SparseOps, MismatchedSpacesAreRejected) {
  const auto a = make_setup(make_sphere(1.0, 2));
  const auto b = make_setup(make_sphere(1.0, 3));
  const auto kw = constant_damped_wavenumber(kPi, 0.1, a.mesh.n_vertices());
  EXPECT_THROW(assemble_sparse_set(a.mesh, a.topo, b.snc, a.p1, kw), DimensionError);
  EXPECT_THROW(assemble_sparse_set(a.mesh, a.topo, a.p1, a.p1, kw), ArgumentError);
  const auto kw_wrong = constant_damped_wavenumber(kPi, 0.1, b.mesh.n_vertices());
  EXPECT_THROW(assemble_sparse_set(a.mesh, a.topo, a.snc, a.p1, kw_wrong), DimensionError);
}
