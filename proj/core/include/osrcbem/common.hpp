// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace osrcbem {

using Real = double;
using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;
using MatrixC = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files, broken topology or orientation problems.
class MeshError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent sizes between spaces, matrices and vectors.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Singular factorizations, rational-approximant poles and similar failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument values (non-positive wavenumber, p not orthogonal to d, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace osrcbem
