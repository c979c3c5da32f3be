// Copyright 2026 The sympent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include "sympent/errors.hpp"
#include "sympent/operators.hpp"

namespace sympent::operators {

/// Text format: a header line `complex-matrix <rows> <cols>`, followed by
/// the entries row-major, each as a whitespace-separated `re im` pair.
inline void write_matrix(std::ostream& os, const Matrix& m) {
  os << "complex-matrix " << m.rows() << ' ' << m.cols() << '\n';
  const auto saved_precision = os.precision();
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << m(i, j).real() << ' ' << m(i, j).imag();
    }
    os << '\n';
  }
  os << std::setprecision(static_cast<int>(saved_precision));
}

inline Matrix read_matrix(std::istream& is) {
  std::string tag;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(is >> tag >> rows >> cols) || tag != "complex-matrix" || rows <= 0 ||
      cols <= 0) {
    throw Error("read_matrix: expected header `complex-matrix <rows> "
                "<cols>`");
  }
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0.0;
      double im = 0.0;
      if (!(is >> re >> im)) {
        throw Error("read_matrix: truncated entry list at (" +
                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

inline void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) {
    throw Error("save_matrix: cannot open " + path);
  }
  write_matrix(os, m);
}

inline Matrix load_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw Error("load_matrix: cannot open " + path);
  }
  return read_matrix(is);
}

}  // namespace sympent::operators
