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
#include "dpc/plant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpc/error.hpp"

namespace dpc {
namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

ReducedForm partition(const LtiPlant& plant, const Matrix& P,
                      const Matrix& P_inv) {
  const int n = plant.n();
  const int q = plant.q();
  const int s = n - q;
  const Matrix a_bar = P * plant.A * P_inv;
  const Matrix b_bar = P * plant.B;
  ReducedForm rf;
  rf.P = P;
  rf.P_inv = P_inv;
  rf.A11 = a_bar.topLeftCorner(s, s);
  rf.A12 = a_bar.topRightCorner(s, q);
  rf.A21 = a_bar.bottomLeftCorner(q, s);
  rf.A22 = a_bar.bottomRightCorner(q, q);
  rf.B1 = b_bar.topRows(s);
  rf.B2 = b_bar.bottomRows(q);
  return rf;
}

void require_full_row_rank(const LtiPlant& plant) {
  const int rank = numerical_rank(plant.C);
  if (rank != plant.q()) {
    throw ValidationError("output matrix C is rank deficient: rank " +
                          std::to_string(rank) + " < q = " +
                          std::to_string(plant.q()));
  }
}

}  // namespace

void LtiPlant::validate() const {
  if (A.rows() != A.cols()) {
    throw ValidationError("A must be square, got " + dims(A));
  }
  if (A.rows() == 0) throw ValidationError("A must be non-empty");
  if (B.rows() != A.rows()) {
    throw ValidationError("B has " + std::to_string(B.rows()) +
                          " rows but A is " + dims(A));
  }
  if (C.cols() != A.cols()) {
    throw ValidationError("C has " + std::to_string(C.cols()) +
                          " columns but A is " + dims(A));
  }
  if (C.rows() > A.rows()) {
    throw ValidationError("C has more rows (" + std::to_string(C.rows()) +
                          ") than states (" + std::to_string(A.rows()) + ")");
  }
  require_finite(A, "A");
  require_finite(B, "B");
  require_finite(C, "C");
}

Matrix ReducedForm::A_bar() const {
  Matrix out(A11.rows() + A21.rows(), A11.cols() + A12.cols());
  out << A11, A12, A21, A22;
  return out;
}

Matrix ReducedForm::B_bar() const {
  Matrix out(B1.rows() + B2.rows(), B1.cols());
  out << B1, B2;
  return out;
}

Matrix ReducedForm::C_bar() const {
  Matrix out = Matrix::Zero(outputs(), unmeasured() + outputs());
  out.rightCols(outputs()).setIdentity();
  return out;
}

Matrix ReducedForm::error_dynamics() const {
  if (Lbar.rows() != A11.rows() || Lbar.cols() != A21.rows()) {
    throw ValidationError("Lbar must be " + std::to_string(A11.rows()) + "x" +
                          std::to_string(A21.rows()) + ", got " + dims(Lbar));
  }
  return A11 - Lbar * A21;
}

ReducedForm canonicalize_output(const LtiPlant& plant) {
  plant.validate();
  require_full_row_rank(plant);
  const int n = plant.n();
  const int q = plant.q();

  Matrix work = plant.C;
  std::vector<bool> used(n, false);
  for (int row = 0; row < q; ++row) {
    int best_i = row;
    int best_j = -1;
    double best = -1.0;
    for (int i = row; i < q; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!used[j] && std::fabs(work(i, j)) > best) {
          best = std::fabs(work(i, j));
          best_i = i;
          best_j = j;
        }
      }
    }
    work.row(row).swap(work.row(best_i));
    used[best_j] = true;
    for (int i = row + 1; i < q; ++i) {
      work.row(i) -= (work(i, best_j) / work(row, best_j)) * work.row(row);
    }
  }

  Matrix P = Matrix::Zero(n, n);
  int next = 0;
  for (int j = 0; j < n; ++j) {
    if (!used[j]) P(next++, j) = 1.0;
  }
  P.bottomRows(q) = plant.C;
  return partition(plant, P, P.inverse());
}

ReducedForm canonicalize_output(const LtiPlant& plant, const Matrix& P) {
  plant.validate();
  require_full_row_rank(plant);
  const int n = plant.n();
  if (P.rows() != n || P.cols() != n) {
    throw ValidationError("transform P must be " + std::to_string(n) + "x" +
                          std::to_string(n) + ", got " + dims(P));
  }
  if (numerical_rank(P) != n) {
    throw ValidationError("transform P is singular");
  }
  const Matrix P_inv = P.inverse();
  Matrix target = Matrix::Zero(plant.q(), n);
  target.rightCols(plant.q()).setIdentity();
  const double mismatch = (plant.C * P_inv - target).cwiseAbs().maxCoeff();
  if (mismatch > 1e-10) {
    throw ValidationError(
        "transform P does not put C in the form [0 I]: max deviation " +
        std::to_string(mismatch));
  }
  return partition(plant, P, P_inv);
}

Vector full_observer_step(const LtiPlant& plant, const FullObserver& obs,
                          const Vector& xhat, const Vector& u,
                          const Vector& y) {
  return plant.A * xhat + plant.B * u + obs.L * (y - plant.C * xhat);
}

Vector reduced_observer_step(const ReducedForm& rf, const Vector& xhat1,
                             const Vector& u, const Vector& y_k,
                             const Vector& y_next) {
  const Vector y_bar = y_next - rf.A22 * y_k - rf.B2 * u;
  const Vector u_bar = rf.A12 * y_k + rf.B1 * u;
  return rf.A11 * xhat1 + u_bar + rf.Lbar * (y_bar - rf.A21 * xhat1);
}

Vector controller(const GainSet& gains, const std::vector<Vector>& received,
                  const Vector& own_estimate) {
  Vector sum = Vector::Zero(own_estimate.size());
  for (const Vector& theta : received) sum += theta - own_estimate;
  return gains.K * sum;
}

}  // namespace dpc
