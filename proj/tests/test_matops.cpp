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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dpc/error.hpp"
#include "dpc/matops.hpp"
#include "support.hpp"

using namespace dpc;
using dpc::testing::mat;
using dpc::testing::max_abs;
using dpc::testing::random_matrix;

TEST_CASE("kron of identities is identity") {
  CHECK(max_abs(kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) -
                Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("kron scales diagonal blocks") {
  const Matrix out = kron(mat({{2, 0}, {0, 3}}), mat({{5}}));
  CHECK(max_abs(out - mat({{10, 0}, {0, 15}})) == 0.0);
}

TEST_CASE("kron matches the index formula") {
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(2, 3);
    const Matrix b = random_matrix(4, 2);
    const Matrix k = kron(a, b);
    REQUIRE(k.rows() == 8);
    REQUIRE(k.cols() == 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        for (int r = 0; r < 4; ++r)
          for (int s = 0; s < 2; ++s)
            CHECK(k(4 * i + r, 2 * j + s) == a(i, j) * b(r, s));
  }
}

TEST_CASE("kron is associative") {
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(2, 2);
    const Matrix b = random_matrix(3, 2);
    const Matrix c = random_matrix(2, 3);
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-12);
  }
}

TEST_CASE("induced one norm") {
  CHECK(induced_one_norm(mat({{0.7, 0}, {-0.45, 0.5}})) ==
        doctest::Approx(1.15).epsilon(1e-15));
  CHECK(induced_one_norm(Matrix::Zero(3, 3)) == 0.0);
  CHECK(induced_one_norm(mat({{0.34, 0}, {-0.45, 0.5}})) ==
        doctest::Approx(0.79).epsilon(1e-15));
  CHECK(induced_one_norm(Matrix()) == 0.0);
}

TEST_CASE("induced one norm is sub-multiplicative") {
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_matrix(4, 3);
    const Matrix b = random_matrix(3, 5);
    CHECK(induced_one_norm(a * b) <=
          induced_one_norm(a) * induced_one_norm(b) + 1e-14);
  }
}

TEST_CASE("spectral radius examples") {
  CHECK(spectral_radius(mat({{1.2, 0}, {0, 0.5}})) == 1.2);
  CHECK(spectral_radius(mat({{0.7, 0}, {-0.45, 0.5}})) ==
        doctest::Approx(0.7).epsilon(1e-12));
  CHECK(spectral_radius(mat({{0, -1}, {1, 0}})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral radius of a diagonal matrix is exact") {
  for (int trial = 0; trial < 20; ++trial) {
    const Vector d = dpc::testing::random_vector(6, -3, 3);
    CHECK(spectral_radius(d.asDiagonal().toDenseMatrix()) ==
          d.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("spectral radius is transpose invariant") {
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(5, 5);
    const double r = spectral_radius(m);
    CHECK(std::fabs(spectral_radius(m.transpose()) - r) <= 1e-9 * (1 + r));
  }
}

TEST_CASE("spectral radius rejects bad input") {
  CHECK_THROWS_AS(spectral_radius(Matrix::Zero(2, 3)), ValidationError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(spectral_radius(bad, "bad"), ValidationError);
}

TEST_CASE("stability threshold is strict") {
  CHECK(is_contracting(0.999));
  CHECK_FALSE(is_contracting(1.0));
  CHECK_FALSE(is_contracting(1.0 - 1e-13));
}

TEST_CASE("symmetric eigenvalues") {
  const auto z = sym_eigvals(Matrix::Zero(2, 2));
  CHECK(z == std::vector<double>{0.0, 0.0});
  const auto k3 = sym_eigvals(mat({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
  CHECK(k3[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::fabs(k3[0]) <= 1e-9);
  CHECK(std::fabs(k3[1] - 3.0) <= 1e-9);
  CHECK(std::fabs(k3[2] - 3.0) <= 1e-9);
  const auto p2 = sym_eigvals(mat({{1, -1}, {-1, 1}}));
  CHECK(std::fabs(p2[0]) <= 1e-9);
  CHECK(std::fabs(p2[1] - 2.0) <= 1e-9);
}

TEST_CASE("symmetric eigenvalues sum to the trace") {
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m = random_matrix(6, 6);
    m = (m + m.transpose()).eval();
    const auto ev = sym_eigvals(m);
    double sum = 0.0;
    for (double v : ev) sum += v;
    CHECK(std::fabs(sum - m.trace()) <= 1e-9);
    CHECK(std::is_sorted(ev.begin(), ev.end()));
  }
}

TEST_CASE("symmetric eigenvalues reject asymmetric input") {
  CHECK_THROWS_AS(sym_eigvals(mat({{1, 2}, {0, 1}})), ValidationError);
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(mat({{1, 0}})) == 1);
  CHECK(numerical_rank(mat({{1, 2}, {2, 4}})) == 1);
  CHECK(numerical_rank(Matrix::Identity(3, 3)) == 3);
  CHECK(numerical_rank(Matrix::Zero(2, 2)) == 0);
}
