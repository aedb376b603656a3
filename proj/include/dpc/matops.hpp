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
#ifndef DPC_MATOPS_HPP_
#define DPC_MATOPS_HPP_

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dpc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Stability threshold shared by every "< 1" check in the library. A value
// must clear 1 by this margin to count as contracting.
inline constexpr double kStabilityMargin = 1e-12;

inline bool is_contracting(double radius) {
  return radius < 1.0 - kStabilityMargin;
}

// Kronecker product; block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

// Induced 1-norm: maximum absolute column sum. Zero for empty matrices.
double induced_one_norm(const Matrix& m);

// Maximum eigenvalue modulus via a dense real Schur decomposition.
// Throws NumericError naming `name` if the QR iteration does not converge.
double spectral_radius(const Matrix& m, std::string_view name = "matrix");

// Ascending eigenvalues of a symmetric matrix. Throws ValidationError when
// ||m - m^T|| exceeds 1e-10 * ||m||.
std::vector<double> sym_eigvals(const Matrix& m);

// Numerical rank from singular values, threshold 1e-9 * sigma_max.
int numerical_rank(const Matrix& m);

// Throws ValidationError unless every entry is finite.
void require_finite(const Matrix& m, std::string_view name);

}  // namespace dpc

#endif  // DPC_MATOPS_HPP_
