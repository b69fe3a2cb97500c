// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osrcbem/experiment.hpp"

namespace osrcbem::cli {

/// Exit codes of the driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Settings shared by all experiments. Scalars that accept "pi" multiples
/// (kappa, kappas) are kept as text and parsed on use.
struct ExperimentConfig {
  std::string mesh;
  int sphere_divisions = 8;
  double radius = 1.0;
  std::string kappa = "pi";
  std::string preconditioner = "osrc-a(2)";
  /// "" picks the sphere radius for built-in spheres and "auto" otherwise.
  std::string curvature_radius;
  bool constant_damping_per_element = false;
  int sparse_quadrature = 4;
  int singular_order = 6;
  double tol = 1e-5;
  int maxit = 1000;
  int restart = 0;
  std::string plane = "e";
  std::string polarization = "x";
  int angles = 181;
  std::filesystem::path output_dir = ".";
  bool dump_matrices = false;
};

struct BenchConfig {
  ExperimentConfig base;
  std::string kappas = "pi,2pi";
  std::string divisions = "4,6";
  /// When set, each kappa gets the coarsest sphere with kappa h <= kappa_h.
  std::string kappa_h;
  std::string formulations = "none,osrc-a(1),osrc-a(2),osrc-b";
};

struct SpectrumConfig {
  ExperimentConfig base;
  std::string terms = "1,5,9";
};

struct PadeDumpConfig {
  int terms = 50;
  double alpha = kPi / 2.0;
  double tau = 0.1;
  std::filesystem::path output_dir = ".";
};

/// "pi", "2pi", "2*pi", "0.5" and similar.
double parse_scalar(const std::string& text);
/// Comma separated list of scalars; empty text gives an empty list.
std::vector<double> parse_scalar_list(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

/// Flat key=value file. Blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

TriangleMesh make_mesh(const ExperimentConfig& cfg);
DampingSpec damping_spec(const ExperimentConfig& cfg);
GmresOptions gmres_options(const ExperimentConfig& cfg);
BemQuadratureOptions quadrature_options(const ExperimentConfig& cfg);
PlaneWave plane_wave(const ExperimentConfig& cfg, double kappa);
/// Azimuth of the observation plane for the configured polarization.
double observation_phi(const ExperimentConfig& cfg);

/// Warns on `log` when kappa h > pi / 2. Returns true if it warned.
bool warn_resolution(double kappa, double h, std::ostream& log);

int run_validate(const ExperimentConfig& cfg, std::ostream& log);
int run_bench(const BenchConfig& cfg, std::ostream& log);
int run_spectrum(const SpectrumConfig& cfg, std::ostream& log);
int run_pade_dump(const PadeDumpConfig& cfg, std::ostream& log);
int run_mesh_info(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace osrcbem::cli
