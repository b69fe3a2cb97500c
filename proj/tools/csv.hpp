// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "osrcbem/common.hpp"

namespace osrcbem::cli {

/// CSV file with a versioned schema comment as its first line.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view schema, const std::vector<std::string>& columns)
      : out_(path) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    out_.precision(std::numeric_limits<double>::max_digits10);
    out_ << "# osrcbem " << schema << " v1\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }

  void comment(std::string_view text) { out_ << "# " << text << '\n'; }

  template <class First, class... Rest>
  void row(const First& first, const Rest&... rest) {
    out_ << first;
    ((out_ << ',' << rest), ...);
    out_ << '\n';
    if (!out_) throw Error("CSV write failed");
  }

 private:
  std::ofstream out_;
};

}  // namespace osrcbem::cli
