// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <unsupported/Eigen/SparseExtra>

namespace osrcbem {

namespace {

constexpr std::array<char, 8> kMagic{'O', 'S', 'R', 'C', 'B', 'E', 'M', '1'};

static_assert(std::endian::native == std::endian::little, "raw matrix dumps assume a little-endian host");

template <class T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void write_dense_matrix(const std::filesystem::path& path, const MatrixC& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  write_pod(out, static_cast<std::uint64_t>(m.rows()));
  write_pod(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      write_pod(out, m(i, j).real());
      write_pod(out, m(i, j).imag());
    }
  }
  if (!out) throw Error("write to " + path.string() + " failed");
}

MatrixC read_dense_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(path.string() + " is not a dense matrix dump");
  const auto rows = read_pod<std::uint64_t>(in);
  const auto cols = read_pod<std::uint64_t>(in);
  MatrixC m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = read_pod<double>(in);
      const double im = read_pod<double>(in);
      m(i, j) = Complex(re, im);
    }
  }
  if (!in) throw Error(path.string() + " is truncated");
  return m;
}

void write_matrix_market(const std::filesystem::path& path, const SparseC& m) {
  if (!Eigen::saveMarket(m, path.string())) throw Error("cannot write " + path.string());
}

}  // namespace osrcbem
