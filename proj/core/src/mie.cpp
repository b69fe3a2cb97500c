// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/mie.hpp"

#include <cmath>

namespace osrcbem {

int mie_truncation(double x) { return static_cast<int>(std::ceil(x + 10.0 * std::cbrt(x) + 10.0)); }

std::vector<double> riccati_psi(double x, int n_max) {
  // Downward recurrence for j_n, renormalised to the larger of j_0 and j_1.
  const int start = n_max + 30 + static_cast<int>(x);
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-300;
  for (int n = start; n >= 1; --n) {
    j[n - 1] = (2.0 * n + 1.0) / x * j[n] - j[n + 1];
    if (std::abs(j[n - 1]) > 1e250) {
      for (int k = n - 1; k <= start; ++k) j[k] *= 1e-250;
    }
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / j[0] : j1 / j[1];
  std::vector<double> psi(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) psi[n] = x * j[n] * scale;
  return psi;
}

std::vector<double> spherical_y(double x, int n_max) {
  std::vector<double> y(static_cast<std::size_t>(n_max) + 1);
  y[0] = -std::cos(x) / x;
  if (n_max >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < n_max; ++n) y[n + 1] = (2.0 * n + 1.0) / x * y[n] - y[n - 1];
  return y;
}

MieSolution mie_coefficients(double kappa, double radius, std::optional<int> n_max) {
  if (!(kappa > 0.0) || !(radius > 0.0)) throw ArgumentError("Mie series needs kappa * radius > 0");
  const double x = kappa * radius;
  MieSolution s;
  s.kappa = kappa;
  s.radius = radius;
  s.n_max = n_max ? *n_max : mie_truncation(x);
  if (s.n_max < 1) throw ArgumentError("Mie truncation order must be positive");
  const auto psi = riccati_psi(x, s.n_max);
  const auto y = spherical_y(x, s.n_max);
  std::vector<Complex> xi(psi.size());
  for (std::size_t n = 0; n < psi.size(); ++n) xi[n] = Complex(psi[n], x * y[n]);
  for (int n = 1; n <= s.n_max; ++n) {
    const double dpsi = psi[n - 1] - n * psi[n] / x;
    const Complex dxi = xi[n - 1] - static_cast<double>(n) * xi[n] / x;
    s.a.push_back(dpsi / dxi);
    s.b.push_back(psi[n] / xi[n]);
  }
  return s;
}

std::vector<double> mie_bistatic_rcs(const MieSolution& mie, const std::vector<double>& theta,
                                     ScatteringPlane plane) {
  std::vector<double> out;
  out.reserve(theta.size());
  for (double t : theta) {
    const double mu = std::cos(t);
    double pi_prev = 0.0;
    double pi_n = 1.0;
    Complex s1 = 0.0;
    Complex s2 = 0.0;
    for (int n = 1; n <= mie.n_max; ++n) {
      const double tau_n = n * mu * pi_n - (n + 1) * pi_prev;
      const double f = (2.0 * n + 1.0) / (n * (n + 1.0));
      s1 += f * (mie.a[n - 1] * pi_n + mie.b[n - 1] * tau_n);
      s2 += f * (mie.a[n - 1] * tau_n + mie.b[n - 1] * pi_n);
      const double pi_next = ((2.0 * n + 1.0) * mu * pi_n - (n + 1.0) * pi_prev) / n;
      pi_prev = pi_n;
      pi_n = pi_next;
    }
    const Complex s = plane == ScatteringPlane::EPlane ? s2 : s1;
    out.push_back(4.0 * kPi / (mie.kappa * mie.kappa) * std::norm(s));
  }
  return out;
}

std::vector<double> mie_bistatic_rcs(double kappa, double radius, const std::vector<double>& theta,
                                     ScatteringPlane plane) {
  return mie_bistatic_rcs(mie_coefficients(kappa, radius), theta, plane);
}

double to_db(double rcs) { return 10.0 * std::log10(rcs); }

}  // namespace osrcbem
