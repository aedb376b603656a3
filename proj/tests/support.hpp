// Copyright 2026 The dpconsensus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPC_TESTS_SUPPORT_HPP_
#define DPC_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <random>

#include "dpc/matops.hpp"

namespace dpc::testing {

// Reproducible generator for property checks.
inline std::mt19937_64& prng() {
  static std::mt19937_64 gen(20260314ULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(prng());
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(prng());
}

inline Matrix random_matrix(int rows, int cols, double lo = -1.0,
                            double hi = 1.0) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
  }
  return m;
}

inline Vector random_vector(int n, double lo = -1.0, double hi = 1.0) {
  return random_matrix(n, 1, lo, hi);
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.begin()->size());
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace dpc::testing

#endif  // DPC_TESTS_SUPPORT_HPP_
