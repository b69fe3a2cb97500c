// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cli.hpp"

namespace {

using namespace osrcbem;
using namespace osrcbem::cli;

struct Common {
  std::string config;
  int threads = 0;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--config", common.config, "Flat key=value file; command-line flags win");
  sub->add_option("--threads", common.threads, "OpenMP thread count (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);
}

void add_mesh(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--mesh", cfg.mesh, "Gmsh ASCII v2 (.msh) or OFF (.off) surface; default is a built-in sphere");
  sub->add_option("--sphere-divisions", cfg.sphere_divisions, "Edge subdivisions of the built-in geodesic sphere")
      ->capture_default_str();
  sub->add_option("--radius", cfg.radius, "Sphere radius")->capture_default_str();
}

void add_problem(CLI::App* sub, ExperimentConfig& cfg) {
  add_mesh(sub, cfg);
  sub->add_option("--kappa", cfg.kappa, "Wavenumber, e.g. 3.14, pi or 2pi")->capture_default_str();
  sub->add_option("--curvature-radius", cfg.curvature_radius,
                  "Damping curvature radius, or auto for the per-vertex estimate (default: sphere radius)");
  sub->add_flag("--constant-damping", cfg.constant_damping_per_element, "Element-constant damped wavenumber");
  sub->add_option("--sparse-quadrature", cfg.sparse_quadrature, "Triangle rule degree for sparse operators")
      ->capture_default_str();
  sub->add_option("--singular-order", cfg.singular_order, "Gauss order of the singular pair rules")
      ->capture_default_str();
  sub->add_option("--output-dir", cfg.output_dir, "Directory for CSV output")->capture_default_str();
  sub->add_flag("--dump-matrices", cfg.dump_matrices, "Write S.bin and the sparse operators as Matrix Market");
}

void add_solver(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--tol", cfg.tol, "Relative GMRES tolerance")->capture_default_str();
  sub->add_option("--maxit", cfg.maxit, "GMRES iteration limit")->capture_default_str();
  sub->add_option("--restart", cfg.restart, "GMRES restart length (0 = none)")->capture_default_str();
}

void apply_config(CLI::App* sub, const std::string& path) {
  for (const auto& [key, value] : read_config_file(path)) {
    if (key == "config") throw ArgumentError("config files cannot include other config files");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw ArgumentError("unknown config key '" + key + "' for " + sub->get_name());
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin EFIE solver with OSRC preconditioning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "osrcbem 0.1.0");

  Common common;
  ExperimentConfig vcfg;
  auto* validate = app.add_subcommand("validate", "Bistatic RCS of a sphere against the Mie series");
  add_common(validate, common);
  add_problem(validate, vcfg);
  add_solver(validate, vcfg);
  validate->add_option("--preconditioner", vcfg.preconditioner, "none, osrc-a(N) or osrc-b")->capture_default_str();
  validate->add_option("--plane", vcfg.plane, "Observation plane: e or h")->capture_default_str();
  validate->add_option("--polarization", vcfg.polarization, "Incident polarization x or y (incidence along +z)")
      ->capture_default_str();
  validate->add_option("--angles", vcfg.angles, "Number of scattering angles over 0..180 degrees")
      ->capture_default_str();

  BenchConfig bcfg;
  bcfg.base.sphere_divisions = 4;
  auto* bench = app.add_subcommand("bench", "Iteration counts and timing ratios over a kappa/mesh grid");
  add_common(bench, common);
  add_problem(bench, bcfg.base);
  add_solver(bench, bcfg.base);
  bench->add_option("--kappas", bcfg.kappas, "Comma separated wavenumbers")->capture_default_str();
  bench->add_option("--divisions", bcfg.divisions, "Comma separated sphere subdivisions")->capture_default_str();
  bench->add_option("--kappa-h", bcfg.kappa_h, "Pick the sphere per kappa so that kappa h <= this value");
  bench->add_option("--formulations", bcfg.formulations, "Comma separated preconditioners")->capture_default_str();

  SpectrumConfig scfg;
  scfg.base.sphere_divisions = 4;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the preconditioned EFIE on a small mesh");
  add_common(spectrum, common);
  add_problem(spectrum, scfg.base);
  spectrum->add_option("--terms", scfg.terms, "Comma separated Padé term counts")->capture_default_str();

  PadeDumpConfig pcfg;
  auto* pade = app.add_subcommand("pade-dump", "Padé coefficients and the dominant set");
  add_common(pade, common);
  pade->add_option("--terms", pcfg.terms, "Number of Padé terms")->capture_default_str();
  pade->add_option("--alpha", pcfg.alpha, "Branch cut rotation angle (radians)")->capture_default_str();
  pade->add_option("--tau", pcfg.tau, "Dominance threshold relative to the largest |A_j/B_j|")
      ->capture_default_str();
  pade->add_option("--output-dir", pcfg.output_dir, "Directory for CSV output")->capture_default_str();

  ExperimentConfig mcfg;
  auto* info = app.add_subcommand("mesh-info", "Mesh statistics and curvature estimate as CSV on stdout");
  add_common(info, common);
  add_mesh(info, mcfg);

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    if (!common.config.empty()) apply_config(sub, common.config);
#ifdef _OPENMP
    if (common.threads > 0) omp_set_num_threads(common.threads);
#endif
    if (sub == validate) return run_validate(vcfg, std::cout);
    if (sub == bench) return run_bench(bcfg, std::cout);
    if (sub == spectrum) return run_spectrum(scfg, std::cout);
    if (sub == pade) return run_pade_dump(pcfg, std::cout);
    return run_mesh_info(mcfg, std::cout);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MeshError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
