// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "osrcbem/matrix_io.hpp"
#include "test_util.hpp"

using namespace osrcbem;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "osrcbem_matrix_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(MatrixIo, DenseRoundTrip) {
  std::mt19937 rng(12);
  MatrixC m(7, 4);
  for (Eigen::Index j = 0; j < 4; ++j) m.col(j) = test::random_vector(7, rng);
  const auto path = scratch("roundtrip.bin");
  write_dense_matrix(path, m);
  EXPECT_EQ(fs::file_size(path), 24u + 16u * 28u);
  const MatrixC back = read_dense_matrix(path);
  ASSERT_EQ(back.rows(), 7);
  ASSERT_EQ(back.cols(), 4);
  EXPECT_TRUE((back.array() == m.array()).all());
}

TEST(MatrixIo, HeaderLayout) {
  MatrixC m(2, 3);
  m << 1, 2, 3, 4, 5, Complex(6, -1);
  const auto path = scratch("header.bin");
  write_dense_matrix(path, m);
  std::ifstream in(path, std::ios::binary);
  char magic[8];
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&rows), 8);
  in.read(reinterpret_cast<char*>(&cols), 8);
  EXPECT_EQ(std::string(magic, 8), "OSRCBEM1");
  EXPECT_EQ(rows, 2u);
  EXPECT_EQ(cols, 3u);
  double first[4];
  in.read(reinterpret_cast<char*>(first), sizeof(first));
  // Row-major: (0,0) then (0,1).
  EXPECT_EQ(first[0], 1.0);
  EXPECT_EQ(first[2], 2.0);
}

TEST(MatrixIo, TruncatedAndForeignFilesAreRejected) {
  const auto path = scratch("truncated.bin");
  write_dense_matrix(path, MatrixC::Ones(5, 5));
  fs::resize_file(path, 24 + 16 * 10);
  EXPECT_THROW(read_dense_matrix(path), Error);

  const auto foreign = scratch("foreign.bin");
  std::ofstream(foreign) << "not a matrix at all, just text";
  EXPECT_THROW(read_dense_matrix(foreign), Error);
  EXPECT_THROW(read_dense_matrix(scratch("missing.bin")), Error);
}

TEST(MatrixIo, MatrixMarketHeader) {
  SparseC m(3, 3);
  m.insert(0, 0) = Complex(1, 2);
  m.insert(2, 1) = Complex(-3, 0);
  const auto path = scratch("m.mtx");
  write_matrix_market(path, m);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  std::istringstream words(first);
  std::vector<std::string> tokens{std::istream_iterator<std::string>(words), {}};
  EXPECT_EQ(tokens, (std::vector<std::string>{"%%MatrixMarket", "matrix", "coordinate", "complex", "general"}));
  std::string sizes;
  std::getline(in, sizes);
  EXPECT_EQ(sizes, "3 3 2");
}
