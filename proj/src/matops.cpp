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
#include "dpc/matops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpc/error.hpp"

namespace dpc {

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index p = b.rows();
  const Eigen::Index q = b.cols();
  Matrix out(a.rows() * p, a.cols() * q);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * p, j * q, p, q) = a(i, j) * b;
    }
  }
  return out;
}

double induced_one_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

double spectral_radius(const Matrix& m, std::string_view name) {
  if (m.rows() != m.cols()) {
    throw ValidationError("spectral_radius: " + std::string(name) +
                          " is not square");
  }
  if (m.size() == 0) return 0.0;
  require_finite(m, name);
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigensolver did not converge for " +
                       std::string(name));
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> sym_eigvals(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("sym_eigvals: matrix is not square");
  }
  if (m.size() == 0) return {};
  require_finite(m, "sym_eigvals input");
  const double scale = m.norm();
  if ((m - m.transpose()).norm() > 1e-10 * scale) {
    throw ValidationError("sym_eigvals: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver did not converge");
  }
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + m.rows());
  std::sort(out.begin(), out.end());
  return out;
}

int numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  if (smax == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-9 * smax) ++rank;
  }
  return rank;
}

void require_finite(const Matrix& m, std::string_view name) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(name) + " has non-finite entries");
  }
}

}  // namespace dpc
