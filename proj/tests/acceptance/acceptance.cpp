// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. Exits 0 once every
// criterion has been evaluated; --strict turns any FAIL into exit code 1.
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "osrcbem/experiment.hpp"
#include "osrcbem/mie.hpp"

using namespace osrcbem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

VectorC random_vector(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  VectorC v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  return v;
}

const GmresOptions kGmres{1e-5, 1000, {}};

Outcome pade_exactness() {
  const auto c = compute_pade(1);
  double err = std::max({std::abs(c.a[0] - 0.5), std::abs(c.b[0] - 0.25), std::abs(c.B[0] - Complex(0.1, -0.3))});
  bool pass = err <= 1e-12;
  double worst_r0 = 0.0;
  for (int n = 1; n <= 50; ++n) {
    const auto p = compute_pade(n);
    Complex sum = p.C0;
    for (int j = 0; j < n; ++j) sum += p.A[j] / p.B[j];
    worst_r0 = std::max(worst_r0, std::abs(sum - p.R0) / std::abs(p.R0));
  }
  pass = pass && worst_r0 <= 1e-10;
  return {pass, fmt("N=1 coefficient error %.2e (<= 1e-12); R0 identity worst relative %.2e over N=1..50 (<= 1e-10)",
                    err, worst_r0)};
}

Outcome sqrt_quality() {
  bool pass = true;
  std::string detail;
  for (double z : {1.0, 5.0, 10.0}) {
    double previous = 1e300;
    detail += fmt("z=%g:", z);
    for (int n : {2, 4, 8}) {
      const double e = std::abs(sqrt_approx(z, compute_pade(n)) - std::sqrt(1.0 + z));
      pass = pass && e <= previous;
      previous = e;
      detail += fmt(" %.2e", e);
    }
    detail += z < 10.0 ? "; " : "";
  }
  return {pass, "errors at N=2,4,8 " + detail};
}

Outcome schur_equivalence() {
  const auto disc = discretize(make_sphere(1.0, 2));
  const auto ops = osrc_operators(disc, kPi, DampingSpec{1.0, {}});
  const auto pade = compute_pade(2);
  const OsrcPreconditioner pre(ops, pade, OsrcVariant::A);
  const MatrixC dense = dense_variant_a(ops, pade);
  std::mt19937 rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const VectorC y = random_vector(dense.rows(), rng);
    const VectorC block = pre.apply(y);
    const VectorC schur = dense * y;
    worst = std::max(worst, (block - schur).norm() / schur.norm());
  }
  return {worst <= 1e-10 && disc.rwg.n_dofs <= 200,
          fmt("%zu edges, N_p=2, worst relative difference %.2e over 20 vectors (<= 1e-10)", disc.rwg.n_dofs, worst)};
}

Outcome differential_identities() {
  const auto disc = discretize(make_sphere(1.0, 8));
  const auto kw = build_damped_wavenumber(kPi, estimate_curvature(disc.mesh));
  const auto ops = assemble_sparse_set(disc.mesh, disc.topo, disc.snc, disc.p1, kw);
  const VectorC ones = VectorC::Ones(ops.L.cols());
  const double l_sum = (ops.L * ones).cwiseAbs().maxCoeff();
  const double l_scale = MatrixC(ops.L).cwiseAbs().maxCoeff();
  const SparseC dd = assemble_div_div(disc.mesh, disc.rwg, kw);
  const double n_diff = MatrixC(ops.N_eps - dd).cwiseAbs().maxCoeff();
  const double n_scale = MatrixC(dd).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd G = MatrixC(ops.G).real();
  const double asym = (G - G.transpose()).cwiseAbs().maxCoeff();
  const double imag = MatrixC(ops.G).imag().cwiseAbs().maxCoeff();
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  const bool spd = llt.info() == Eigen::Success && asym == 0.0 && imag == 0.0;
  const bool pass = l_sum <= 1e-12 * l_scale && n_diff <= 1e-12 * n_scale && spd;
  return {pass, fmt("%zu edges; max |L 1| %.2e (entries up to %.2e); curl vs div max difference %.2e relative; "
                    "G symmetric, real, Cholesky %s",
                    disc.rwg.n_dofs, l_sum, l_scale, n_diff / n_scale, spd ? "ok" : "failed")};
}

Outcome mie_validation() {
  const auto disc = discretize(make_sphere(1.0, 9));
  const double kappa = kPi;
  const PlaneWave wave{CVec3(1, 0, 0), Vec3::UnitZ(), kappa};
  const auto S = assemble_efie(disc.mesh, disc.rwg, disc.snc, kappa).matrix;
  const VectorC b = assemble_rhs(disc.mesh, disc.rwg, disc.snc, wave);
  const auto direct = solve_efie(S, b, nullptr, kGmres);
  const auto setup = setup_preconditioner(disc, kappa, parse_preconditioner("osrc-a(2)"), DampingSpec{1.0, {}});
  const auto osrc = solve_efie(S, b, &*setup.preconditioner, kGmres);

  const auto theta = angle_grid(181);
  const auto e = compare_rcs(bistatic_rcs(disc, wave, direct.x, theta, 0.0),
                             mie_bistatic_rcs(kappa, 1.0, theta, ScatteringPlane::EPlane));
  const auto h = compare_rcs(bistatic_rcs(disc, wave, direct.x, theta, kPi / 2.0),
                             mie_bistatic_rcs(kappa, 1.0, theta, ScatteringPlane::HPlane));
  const double diff = (osrc.x - direct.x).norm() / direct.x.norm();
  const bool pass = direct.report.converged && osrc.report.converged && e.relative_l2 < 0.05 && e.max_db < 1.5 &&
                    h.relative_l2 < 0.05 && h.max_db < 1.5 && diff < 10.0 * kGmres.tol;
  return {pass, fmt("%zu dofs, h=%.3f; E-plane L2 %.2f%% max %.2f dB; H-plane L2 %.2f%% max %.2f dB; "
                    "osrc-a(2) vs unpreconditioned %.2e (< %.0e); iterations %d vs %d",
                    disc.rwg.n_dofs, disc.stats.h, 100.0 * e.relative_l2, e.max_db, 100.0 * h.relative_l2, h.max_db,
                    diff, 10.0 * kGmres.tol, osrc.report.iterations, direct.report.iterations)};
}

struct RefinementRow {
  std::size_t dofs = 0;
  int none = 0;
  int osrc_a = 0;
  int osrc_b = 0;
  double assembly = 0.0;
  double setup_b = 0.0;
  bool converged = true;
};

std::vector<RefinementRow> refinement_study() {
  std::vector<RefinementRow> rows;
  for (int d : {4, 8, 13}) {
    const auto disc = discretize(make_sphere(1.0, d));
    const PlaneWave wave{CVec3(1, 0, 0), Vec3::UnitZ(), kPi};
    RefinementRow row;
    row.dofs = disc.rwg.n_dofs;
    Stopwatch sw;
    const auto S = assemble_efie(disc.mesh, disc.rwg, disc.snc, kPi).matrix;
    row.assembly = sw.seconds();
    const VectorC b = assemble_rhs(disc.mesh, disc.rwg, disc.snc, wave);
    const DampingSpec damping{1.0, {}};
    const auto none = solve_efie(S, b, nullptr, kGmres);
    const auto a = setup_preconditioner(disc, kPi, parse_preconditioner("osrc-a(2)"), damping);
    const auto sa = solve_efie(S, b, &*a.preconditioner, kGmres);
    const auto bsetup = setup_preconditioner(disc, kPi, parse_preconditioner("osrc-b"), damping);
    const auto sb = solve_efie(S, b, &*bsetup.preconditioner, kGmres);
    row.none = none.report.iterations;
    row.osrc_a = sa.report.iterations;
    row.osrc_b = sb.report.iterations;
    row.setup_b = bsetup.seconds;
    row.converged = none.report.converged && sa.report.converged && sb.report.converged;
    std::cerr << "  refinement d=" << d << ": " << row.dofs << " dofs, iterations " << row.none << "/"
              << row.osrc_a << "/" << row.osrc_b << ", assembly " << row.assembly << " s\n";
    rows.push_back(row);
  }
  return rows;
}

Outcome iteration_behaviour(const std::vector<RefinementRow>& rows) {
  bool pass = true;
  std::string dofs;
  std::string none;
  std::string a;
  std::string b;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    pass = pass && rows[i].converged;
    if (i > 0) pass = pass && rows[i].none > rows[i - 1].none;
    const char* sep = i == 0 ? "" : "->";
    dofs += sep + std::to_string(rows[i].dofs);
    none += sep + std::to_string(rows[i].none);
    a += sep + std::to_string(rows[i].osrc_a);
    b += sep + std::to_string(rows[i].osrc_b);
  }
  const double growth_a = double(rows.back().osrc_a) / rows.front().osrc_a - 1.0;
  const double growth_b = double(rows.back().osrc_b) / rows.front().osrc_b - 1.0;
  pass = pass && growth_a < 0.25 && growth_b < 0.25;
  return {pass, fmt("dofs %s; none %s (strictly increasing); osrc-a(2) %s (%+.0f%%); osrc-b %s (%+.0f%%), limit +25%%",
                    dofs.c_str(), none.c_str(), a.c_str(), 100.0 * growth_a, b.c_str(), 100.0 * growth_b)};
}

Outcome setup_overhead(const std::vector<RefinementRow>& rows) {
  const auto& r = rows.back();
  const double ratio = r.setup_b / r.assembly;
  return {ratio <= 0.10, fmt("%zu dofs: osrc-b setup %.3f s, EFIE assembly %.1f s, overhead %.2f%% (<= 10%%)", r.dofs,
                             r.setup_b, r.assembly, 100.0 * ratio)};
}

Outcome spectral_clustering() {
  const auto disc = discretize(make_sphere(1.0, 4));
  const auto S = assemble_efie(disc.mesh, disc.rwg, disc.snc, kPi).matrix;
  const auto ops = osrc_operators(disc, kPi, DampingSpec{1.0, {}});
  const auto exact = sorted_eigenvalues(dense_mte(ops) * S);
  std::vector<double> spread;
  std::vector<double> distance;
  for (int n : {1, 5, 9}) {
    const OsrcPreconditioner pre(ops, compute_pade(n), OsrcVariant::A);
    LinearOperator p{pre.size(), [&pre](const VectorC& x) { return pre.apply(x); }};
    const auto ev = dense_spectrum(compose(p, matrix_operator(S)));
    spread.push_back(relative_spread(ev));
    distance.push_back(hausdorff_distance(ev, exact));
  }
  const bool decreasing = spread[1] < spread[0] && spread[2] < spread[1];
  const bool closer = distance[2] < distance[0];
  return {decreasing && closer,
          fmt("%zu dofs; spread N_p=1,5,9: %.4f, %.4f, %.4f (exact %.4f), decreasing %s; Hausdorff to exact %.3g, "
              "%.3g, %.3g, N_p=9 closer %s",
              disc.rwg.n_dofs, spread[0], spread[1], spread[2], relative_spread(exact), decreasing ? "yes" : "no",
              distance[0], distance[1], distance[2], closer ? "yes" : "no")};
}

Outcome singular_quadrature() {
  const TriangleMesh pair({Vec3(0, 0, 0), Vec3(0.15, 0, 0), Vec3(0.03, 0.13, 0.01), Vec3(0.9, 0.4, 0.5),
                           Vec3(1.02, 0.45, 0.52), Vec3(0.95, 0.55, 0.44)},
                          {{{0, 1, 2}}, {{3, 4, 5}}});
  const auto topo = build_edge_topology(pair);
  const auto rwg = build_space(pair, topo, SpaceKind::RWG);
  const auto prod = pair_blocks(pair, rwg, 0, 1, kPi);
  const auto ref = pair_blocks_tensor(pair, rwg, 0, 1, kPi, 20);
  const double e_err = (prod.efie - ref.efie).norm() / ref.efie.norm();
  const double m_err = (prod.mfie - ref.mfie).norm() / ref.mfie.norm();

  const auto disc = discretize(make_sphere(1.0, 2));
  std::vector<MatrixC> S;
  for (int order : {2, 4, 6, 8}) {
    BemQuadratureOptions opts;
    opts.singular_order = order;
    S.push_back(assemble_efie(disc.mesh, disc.rwg, disc.snc, kPi, opts).matrix);
  }
  std::vector<double> change;
  for (std::size_t i = 0; i + 1 < S.size(); ++i) change.push_back((S[i + 1] - S[i]).norm() / S.back().norm());
  const bool monotone = change[1] < change[0] && change[2] < change[1];
  return {e_err <= 1e-8 && m_err <= 1e-8 && monotone,
          fmt("pair vs order-20 tensor: EFIE %.2e, MFIE %.2e (<= 1e-8); order 2->4->6->8 changes %.2e, %.2e, %.2e",
              e_err, m_err, change[0], change[1], change[2])};
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " [" << name << "] " << o.detail
              << std::endl;
  };

  report(1, "pade coefficients", pade_exactness);
  report(2, "square-root approximation", sqrt_quality);
  report(3, "block vs Schur apply", schur_equivalence);
  report(4, "discrete differential identities", differential_identities);
  report(5, "Mie validation", mie_validation);
  std::vector<RefinementRow> rows;
  std::string refinement_error;
  try {
    rows = refinement_study();
  } catch (const std::exception& e) {
    refinement_error = e.what();
  }
  auto with_rows = [&](Outcome (*f)(const std::vector<RefinementRow>&)) {
    return [&, f]() -> Outcome {
      if (rows.empty()) return {false, "refinement study failed: " + refinement_error};
      return f(rows);
    };
  };
  report(6, "iteration behaviour", with_rows(iteration_behaviour));
  report(7, "setup overhead", with_rows(setup_overhead));
  report(8, "spectral clustering", spectral_clustering);
  report(9, "singular quadrature", singular_quadrature);

  std::cout << "summary: " << 9 - failures << "/9 criteria passed" << std::endl;
  return strict && failures > 0 ? 1 : 0;
}
