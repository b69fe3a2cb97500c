// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "osrcbem/sparse_ops.hpp"

namespace osrcbem {

/// Raw dense layout: 8-byte magic "OSRCBEM1", u64 rows, u64 cols, then
/// row-major (re, im) double pairs. Everything little-endian.
void write_dense_matrix(const std::filesystem::path& path, const MatrixC& m);
MatrixC read_dense_matrix(const std::filesystem::path& path);

/// Matrix Market coordinate format.
void write_matrix_market(const std::filesystem::path& path, const SparseC& m);

}  // namespace osrcbem
