// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>

#include "csv.hpp"
#include "osrcbem/matrix_io.hpp"
#include "osrcbem/mie.hpp"

namespace osrcbem::cli {

namespace fs = std::filesystem;

double parse_scalar(const std::string& text) {
  static const std::regex pattern(R"(\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(\*?\s*pi)?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern) || (!m[1].matched && !m[2].matched)) {
    throw ArgumentError("cannot parse number '" + text + "'");
  }
  const double factor = m[1].matched ? std::stod(m[1]) : 1.0;
  return m[2].matched ? factor * kPi : factor;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(item);
      item.clear();
    } else {
      item += ch;
    }
  }
  out.push_back(item);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  return out;
}

std::vector<double> parse_scalar_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(parse_scalar(s));
  return out;
}

std::map<std::string, std::string> read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      const auto last = s.find_last_not_of(" \t\r");
      return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

TriangleMesh make_mesh(const ExperimentConfig& cfg) {
  if (!cfg.mesh.empty()) return load_mesh(cfg.mesh);
  if (cfg.sphere_divisions < 1) throw ArgumentError("sphere-divisions must be positive");
  if (!(cfg.radius > 0.0)) throw ArgumentError("radius must be positive");
  return make_sphere(cfg.radius, cfg.sphere_divisions);
}

DampingSpec damping_spec(const ExperimentConfig& cfg) {
  DampingSpec d;
  if (cfg.curvature_radius.empty()) {
    if (cfg.mesh.empty()) d.radius = cfg.radius;
  } else if (cfg.curvature_radius != "auto") {
    d.radius = parse_scalar(cfg.curvature_radius);
    if (!(*d.radius > 0.0)) throw ArgumentError("curvature-radius must be positive");
  }
  d.assembly.quadrature_degree = cfg.sparse_quadrature;
  d.assembly.constant_per_element = cfg.constant_damping_per_element;
  return d;
}

GmresOptions gmres_options(const ExperimentConfig& cfg) {
  GmresOptions o;
  o.tol = cfg.tol;
  o.max_iterations = cfg.maxit;
  if (cfg.restart > 0) o.restart = cfg.restart;
  return o;
}

BemQuadratureOptions quadrature_options(const ExperimentConfig& cfg) {
  if (cfg.singular_order < 1) throw ArgumentError("singular-order must be positive");
  BemQuadratureOptions o;
  o.singular_order = cfg.singular_order;
  return o;
}

namespace {

double polarization_angle(const ExperimentConfig& cfg) {
  if (cfg.polarization == "x") return 0.0;
  if (cfg.polarization == "y") return kPi / 2.0;
  throw ArgumentError("polarization must be x or y, got '" + cfg.polarization + "'");
}

ScatteringPlane scattering_plane(const ExperimentConfig& cfg) {
  if (cfg.plane == "e" || cfg.plane == "E") return ScatteringPlane::EPlane;
  if (cfg.plane == "h" || cfg.plane == "H") return ScatteringPlane::HPlane;
  throw ArgumentError("plane must be e or h, got '" + cfg.plane + "'");
}

double parse_kappa(const std::string& text) {
  const double k = parse_scalar(text);
  if (!(k > 0.0)) throw ArgumentError("kappa must be positive");
  return k;
}

std::string kind_name(const PreconditionerSpec& spec) {
  return spec.kind == PreconditionerKind::OsrcB ? "osrc-b" : "osrc-a";
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void write_rcs(const fs::path& path, const std::vector<double>& theta, const std::vector<double>& sigma) {
  CsvWriter csv(path, "rcs", {"theta_deg", "rcs_linear", "rcs_db"});
  for (std::size_t i = 0; i < theta.size(); ++i) csv.row(theta[i] * 180.0 / kPi, sigma[i], to_db(sigma[i]));
}

void write_residuals(const fs::path& path, const SolveReport& report) {
  CsvWriter csv(path, "residuals", {"iteration", "residual"});
  for (std::size_t i = 0; i < report.residual_history.size(); ++i) csv.row(i + 1, report.residual_history[i]);
}

void dump_sparse(const fs::path& dir, const SparseOperatorSet& ops) {
  write_matrix_market(dir / "G.mtx", ops.G);
  write_matrix_market(dir / "N_eps.mtx", ops.N_eps);
  write_matrix_market(dir / "K_eps.mtx", ops.K_eps);
  write_matrix_market(dir / "L.mtx", ops.L);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 1) throw ArgumentError(std::string(what) + " expects positive integers, got '" + s + "'");
    out.push_back(v);
  }
  return out;
}

int divisions_for(double radius, double kappa, double kappa_h) {
  for (int d = 1; d <= 64; ++d) {
    if (kappa * mesh_stats(make_sphere(radius, d)).h <= kappa_h) return d;
  }
  throw ArgumentError("kappa-h target needs more than 64 sphere divisions");
}

}  // namespace

PlaneWave plane_wave(const ExperimentConfig& cfg, double kappa) {
  const double psi = polarization_angle(cfg);
  PlaneWave w;
  w.p = CVec3(std::cos(psi), std::sin(psi), 0.0);
  w.d = Vec3::UnitZ();
  w.kappa = kappa;
  w.validate();
  return w;
}

double observation_phi(const ExperimentConfig& cfg) {
  return polarization_angle(cfg) + (scattering_plane(cfg) == ScatteringPlane::HPlane ? kPi / 2.0 : 0.0);
}

bool warn_resolution(double kappa, double h, std::ostream& log) {
  if (kappa * h <= kPi / 2.0) return false;
  log << "warning: kappa*h = " << kappa * h << " exceeds pi/2; the mesh has fewer than 4 points per wavelength\n";
  return true;
}

int run_validate(const ExperimentConfig& cfg, std::ostream& log) {
  const double kappa = parse_kappa(cfg.kappa);
  const auto spec = parse_preconditioner(cfg.preconditioner);
  const auto plane = scattering_plane(cfg);
  const auto wave = plane_wave(cfg, kappa);
  const auto quad = quadrature_options(cfg);
  const auto gm = gmres_options(cfg);
  const auto theta = angle_grid(cfg.angles);
  fs::create_directories(cfg.output_dir);

  const auto disc = discretize(make_mesh(cfg));
  log << "mesh: " << disc.stats.n_triangles << " triangles, " << disc.rwg.n_dofs << " dofs, h = " << disc.stats.h
      << '\n';
  warn_resolution(kappa, disc.stats.h, log);

  const Stopwatch assembly;
  const auto S = assemble_efie(disc.mesh, disc.rwg, disc.snc, kappa, quad);
  log << "EFIE assembly: " << assembly.seconds() << " s\n";
  const VectorC rhs = assemble_rhs(disc.mesh, disc.rwg, disc.snc, wave, quad);

  const auto mie = mie_bistatic_rcs(kappa, cfg.radius, theta, plane);
  write_rcs(cfg.output_dir / "rcs_mie.csv", theta, mie);

  struct Curve {
    std::string name;
    std::string preconditioner;
    EfieSolve solve;
  };
  std::vector<Curve> curves;
  curves.push_back({"efie-direct", "none", solve_efie(S.matrix, rhs, nullptr, gm)});
  std::optional<SparseOperatorSet> ops;
  if (spec.kind != PreconditionerKind::None) {
    const auto setup = setup_preconditioner(disc, kappa, spec, damping_spec(cfg));
    log << to_string(spec) << " setup: " << setup.seconds << " s\n";
    curves.push_back({"efie-" + kind_name(spec), to_string(spec), solve_efie(S.matrix, rhs, &*setup.preconditioner, gm)});
    if (cfg.dump_matrices) ops = osrc_operators(disc, kappa, damping_spec(cfg));
  }

  CsvWriter summary(cfg.output_dir / "summary.csv", "validate-summary",
                    {"curve", "preconditioner", "n_dofs", "iterations", "converged", "true_residual", "rel_l2",
                     "max_db", "solution_rel_diff"});
  bool all_converged = true;
  const VectorC& reference = curves.front().solve.x;
  for (const auto& c : curves) {
    const auto sigma = bistatic_rcs(disc, wave, c.solve.x, theta, observation_phi(cfg));
    write_rcs(cfg.output_dir / ("rcs_" + c.name + ".csv"), theta, sigma);
    write_residuals(cfg.output_dir / ("residuals_" + c.name + ".csv"), c.solve.report);
    const auto cmp = compare_rcs(sigma, mie);
    const double diff = (c.solve.x - reference).norm() / reference.norm();
    const auto& r = c.solve.report;
    summary.row(c.name, c.preconditioner, disc.rwg.n_dofs, r.iterations, r.converged ? 1 : 0, r.true_residual,
                cmp.relative_l2, cmp.max_db, diff);
    log << c.name << ": " << r.iterations << " iterations" << (r.converged ? "" : " (NOT converged)")
        << ", RCS rel L2 " << cmp.relative_l2 << ", max " << cmp.max_db << " dB, solution diff " << diff << '\n';
    all_converged = all_converged && r.converged;
  }

  if (cfg.dump_matrices) {
    write_dense_matrix(cfg.output_dir / "S.bin", S.matrix);
    if (ops) dump_sparse(cfg.output_dir, *ops);
  }
  return all_converged ? kExitOk : kExitNumerical;
}

int run_bench(const BenchConfig& cfg, std::ostream& log) {
  const auto kappas = parse_scalar_list(cfg.kappas);
  for (double k : kappas) {
    if (!(k > 0.0)) throw ArgumentError("kappas must be positive");
  }
  std::vector<PreconditionerSpec> forms;
  for (const auto& s : split_list(cfg.formulations)) forms.push_back(parse_preconditioner(s));
  const auto divisions = parse_int_list(cfg.divisions, "divisions");
  std::optional<double> kappa_h;
  if (!cfg.kappa_h.empty()) kappa_h = parse_scalar(cfg.kappa_h);
  const auto quad = quadrature_options(cfg.base);
  const auto gm = gmres_options(cfg.base);
  const auto damping = damping_spec(cfg.base);
  fs::create_directories(cfg.base.output_dir);

  CsvWriter csv(cfg.base.output_dir / "bench.csv", "bench",
                {"formulation", "kappa", "h", "n_dofs", "iterations", "assembly_s", "precond_setup_s", "solve_s",
                 "setup_ratio", "solve_ratio", "status"});
  const bool sphere_grid = cfg.base.mesh.empty();
  if (kappas.empty() || forms.empty() || (sphere_grid && !kappa_h && divisions.empty())) return kExitOk;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool failed = false;
  for (double kappa : kappas) {
    std::vector<int> grid;
    if (sphere_grid) {
      grid = kappa_h ? std::vector<int>{divisions_for(cfg.base.radius, kappa, *kappa_h)} : divisions;
    } else {
      grid = {0};
    }
    for (int d : grid) {
      ExperimentConfig point = cfg.base;
      point.sphere_divisions = d;
      double h = nan;
      std::size_t n_dofs = 0;
      try {
        const auto disc = discretize(make_mesh(point));
        h = disc.stats.h;
        n_dofs = disc.rwg.n_dofs;
        log << "kappa " << kappa << ", h " << h << ", " << n_dofs << " dofs\n";
        warn_resolution(kappa, h, log);
        const Stopwatch assembly_clock;
        const auto S = assemble_efie(disc.mesh, disc.rwg, disc.snc, kappa, quad);
        const double assembly_s = assembly_clock.seconds();
        const VectorC rhs = assemble_rhs(disc.mesh, disc.rwg, disc.snc, plane_wave(point, kappa), quad);
        const auto baseline = solve_efie(S.matrix, rhs, nullptr, gm);
        const double base_solve = baseline.report.wall_time;
        for (const auto& form : forms) {
          try {
            const auto setup = setup_preconditioner(disc, kappa, form, damping);
            const auto solve = form.kind == PreconditionerKind::None
                                   ? baseline
                                   : solve_efie(S.matrix, rhs, &*setup.preconditioner, gm);
            const auto& r = solve.report;
            csv.row(to_string(form), kappa, h, n_dofs, r.iterations, assembly_s, setup.seconds, r.wall_time,
                    (assembly_s + setup.seconds) / assembly_s, r.wall_time / base_solve,
                    r.converged ? "ok" : "unconverged");
            log << "  " << to_string(form) << ": " << r.iterations << " iterations\n";
            failed = failed || !r.converged;
          } catch (const Error& e) {
            csv.row(to_string(form), kappa, h, n_dofs, -1, assembly_s, nan, nan, nan, nan,
                    "error: " + sanitize(e.what()));
            log << "  " << to_string(form) << ": " << e.what() << '\n';
            failed = true;
          }
        }
      } catch (const Error& e) {
        for (const auto& form : forms) {
          csv.row(to_string(form), kappa, h, n_dofs, -1, nan, nan, nan, nan, nan, "error: " + sanitize(e.what()));
        }
        log << "grid point failed: " << e.what() << '\n';
        failed = true;
      }
    }
  }
  return failed ? kExitNumerical : kExitOk;
}

int run_spectrum(const SpectrumConfig& cfg, std::ostream& log) {
  const double kappa = parse_kappa(cfg.base.kappa);
  const auto terms = parse_int_list(cfg.terms, "terms");
  const auto quad = quadrature_options(cfg.base);
  fs::create_directories(cfg.base.output_dir);

  const auto disc = discretize(make_mesh(cfg.base));
  if (disc.rwg.n_dofs > 500) {
    throw DimensionError("spectrum needs at most 500 edge dofs, mesh has " + std::to_string(disc.rwg.n_dofs));
  }
  warn_resolution(kappa, disc.stats.h, log);
  const auto S = assemble_efie(disc.mesh, disc.rwg, disc.snc, kappa, quad);
  const auto ops = osrc_operators(disc, kappa, damping_spec(cfg.base));
  const LinearOperator op_s = matrix_operator(S.matrix);

  std::vector<std::pair<std::string, std::vector<Complex>>> clouds;
  clouds.emplace_back("none", sorted_eigenvalues(S.matrix));
  auto preconditioned = [&](const OsrcPreconditioner& pre) {
    const LinearOperator op_p{pre.size(), [&pre](const VectorC& y) { return pre.apply(y); }};
    return dense_spectrum(compose(op_p, op_s));
  };
  for (int n : terms) {
    const OsrcPreconditioner pre(ops, compute_pade(n), OsrcVariant::A);
    clouds.emplace_back("osrc-a(" + std::to_string(n) + ")", preconditioned(pre));
  }
  clouds.emplace_back("osrc-b", preconditioned(OsrcPreconditioner(ops, PadeCoefficients{}, OsrcVariant::B)));
  const MatrixC exact = dense_mte(ops) * S.matrix;
  clouds.emplace_back("exact", sorted_eigenvalues(exact));
  const auto& exact_cloud = clouds.back().second;

  CsvWriter csv(cfg.base.output_dir / "spectrum.csv", "spectrum", {"variant", "index", "real", "imag"});
  CsvWriter summary(cfg.base.output_dir / "spectrum_summary.csv", "spectrum-summary",
                    {"variant", "n_eigenvalues", "relative_spread", "hausdorff_to_exact"});
  for (const auto& [name, cloud] : clouds) {
    for (std::size_t i = 0; i < cloud.size(); ++i) csv.row(name, i, cloud[i].real(), cloud[i].imag());
    const double spread = relative_spread(cloud);
    const double dist = hausdorff_distance(cloud, exact_cloud);
    summary.row(name, cloud.size(), spread, dist);
    log << name << ": spread " << spread << ", Hausdorff to exact " << dist << '\n';
  }
  if (cfg.base.dump_matrices) {
    write_dense_matrix(cfg.base.output_dir / "S.bin", S.matrix);
    write_dense_matrix(cfg.base.output_dir / "exact_mte_S.bin", exact);
    dump_sparse(cfg.base.output_dir, ops);
  }
  return kExitOk;
}

int run_pade_dump(const PadeDumpConfig& cfg, std::ostream& log) {
  if (cfg.terms < 1) throw ArgumentError("terms must be positive");
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) throw ArgumentError("tau must lie in (0, 1]");
  const auto c = compute_pade(cfg.terms, cfg.alpha);
  const auto dom = dominant_set(c, cfg.tau);
  std::vector<bool> dominant(static_cast<std::size_t>(c.n_terms), false);
  for (int j : dom.indices) dominant[static_cast<std::size_t>(j)] = true;
  fs::create_directories(cfg.output_dir);
  CsvWriter csv(cfg.output_dir / "pade.csv", "pade",
                {"j", "a", "b", "A_re", "A_im", "B_re", "B_im", "beta_abs", "dominant"});
  std::ostringstream consts;
  consts.precision(17);
  consts << "alpha=" << c.alpha << " R0=" << c.R0.real() << (c.R0.imag() < 0 ? "" : "+") << c.R0.imag()
         << "i C0=" << c.C0.real() << (c.C0.imag() < 0 ? "" : "+") << c.C0.imag() << "i tau=" << cfg.tau
         << " K=" << dom.K.real() << (dom.K.imag() < 0 ? "" : "+") << dom.K.imag() << "i";
  csv.comment(consts.str());
  for (int j = 0; j < c.n_terms; ++j) {
    csv.row(j + 1, c.a[j], c.b[j], c.A[j].real(), c.A[j].imag(), c.B[j].real(), c.B[j].imag(),
            std::abs(c.beta(j)), dominant[static_cast<std::size_t>(j)] ? 1 : 0);
  }
  log << c.n_terms << " terms, " << dom.indices.size() << " dominant at tau " << cfg.tau << '\n';
  return kExitOk;
}

int run_mesh_info(const ExperimentConfig& cfg, std::ostream& log) {
  const auto disc = discretize(make_mesh(cfg));
  const auto curv = estimate_curvature(disc.mesh);
  const auto& r = curv.radius_per_vertex;
  const auto [rmin, rmax] = std::minmax_element(r.begin(), r.end());
  double rmean = 0.0;
  for (double v : r) rmean += v;
  rmean /= double(r.size());
  const auto& s = disc.stats;
  log.precision(10);
  log << "# osrcbem mesh-info v1\nkey,value\n";
  log << "vertices," << s.n_vertices << "\nedges," << s.n_edges << "\ntriangles," << s.n_triangles
      << "\nboundary_edges," << s.n_boundary_edges << "\neuler_characteristic," << s.euler_characteristic
      << "\nclosed," << (disc.mesh.is_closed() ? 1 : 0) << "\nh," << s.h << "\nh_min," << s.h_min << "\narea,"
      << s.total_area << "\nrwg_dofs," << disc.rwg.n_dofs << "\np1_dofs," << disc.p1.n_dofs
      << "\ncurvature_radius_min," << *rmin << "\ncurvature_radius_mean," << rmean << "\ncurvature_radius_max,"
      << *rmax << '\n';
  return kExitOk;
}

}  // namespace osrcbem::cli
