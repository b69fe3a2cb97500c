// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "osrcbem/common.hpp"

namespace osrcbem {

/// Scattering plane relative to the incident polarization.
enum class ScatteringPlane { EPlane, HPlane };

/// Mie series of a perfectly conducting sphere.
struct MieSolution {
  double kappa = 0.0;
  double radius = 0.0;
  int n_max = 0;
  /// a_n = psi_n'/xi_n', b_n = psi_n/xi_n for n = 1..n_max (index n - 1).
  std::vector<Complex> a;
  std::vector<Complex> b;
};

/// Default truncation: ceil(x + 10 x^(1/3) + 10) with x = kappa * radius.
int mie_truncation(double x);

MieSolution mie_coefficients(double kappa, double radius, std::optional<int> n_max = {});

/// Bistatic radar cross section (area units) at scattering angles theta
/// measured from the incident direction (theta = pi is backscatter).
std::vector<double> mie_bistatic_rcs(const MieSolution& mie, const std::vector<double>& theta,
                                     ScatteringPlane plane);
std::vector<double> mie_bistatic_rcs(double kappa, double radius, const std::vector<double>& theta,
                                     ScatteringPlane plane);

/// 10 log10(sigma).
double to_db(double rcs);

/// Riccati-Bessel psi_n(x) = x j_n(x) for n = 0..n_max.
std::vector<double> riccati_psi(double x, int n_max);
/// Spherical Bessel y_n(x) for n = 0..n_max by upward recurrence.
std::vector<double> spherical_y(double x, int n_max);

}  // namespace osrcbem
