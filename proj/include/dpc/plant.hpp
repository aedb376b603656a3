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
#ifndef DPC_PLANT_HPP_
#define DPC_PLANT_HPP_

#include <vector>

#include "dpc/matops.hpp"

namespace dpc {

// x(k+1) = A x(k) + B u(k),  y(k) = C x(k)
struct LtiPlant {
  Matrix A;  // n x n
  Matrix B;  // n x r
  Matrix C;  // q x n

  int n() const { return static_cast<int>(A.rows()); }
  int r() const { return static_cast<int>(B.cols()); }
  int q() const { return static_cast<int>(C.rows()); }

  // Dimension consistency and finiteness; throws ValidationError.
  void validate() const;
};

struct FullObserver {
  Matrix L;  // n x q
};

// Plant in output-canonical coordinates xbar = P x, where C P^-1 = [0 I_q].
// The first n-q coordinates are unmeasured; the last q equal y.
struct ReducedForm {
  Matrix P;
  Matrix P_inv;
  Matrix A11, A12, A21, A22;
  Matrix B1, B2;
  Matrix Lbar;  // (n-q) x q; empty until set

  int unmeasured() const { return static_cast<int>(A11.rows()); }
  int outputs() const { return static_cast<int>(A22.rows()); }

  Matrix A_bar() const;  // P A P^-1
  Matrix B_bar() const;  // P B
  Matrix C_bar() const;  // [0 I_q]
  // Abar11 - Lbar Abar21, the reduced estimation-error dynamics.
  Matrix error_dynamics() const;
};

// Feedback gain; for the reduced path K = [K1 K2] splits at column n - q.
struct GainSet {
  Matrix K;  // r x n

  Matrix K1(int unmeasured) const { return K.leftCols(unmeasured); }
  Matrix K2(int unmeasured) const {
    return K.rightCols(K.cols() - unmeasured);
  }
};

// Builds P by stacking standard basis rows complementary to the pivot columns
// of C (found by fully pivoted elimination) on top of C. Lbar is left empty.
// Throws ValidationError if C does not have full row rank.
ReducedForm canonicalize_output(const LtiPlant& plant);

// Same, with a caller-supplied P. Throws ValidationError if P is singular or
// C P^-1 differs from [0 I_q] by more than 1e-10.
ReducedForm canonicalize_output(const LtiPlant& plant, const Matrix& P);

// xhat+ = A xhat + B u + L (y - C xhat)
Vector full_observer_step(const LtiPlant& plant, const FullObserver& obs,
                          const Vector& xhat, const Vector& u,
                          const Vector& y);

// One step of the reduced observer. Needs the output at k + 1, so the
// simulator runs it at the start of step k + 1.
Vector reduced_observer_step(const ReducedForm& rf, const Vector& xhat1,
                             const Vector& u, const Vector& y_k,
                             const Vector& y_next);

// u = K * sum_j (theta_j - own_estimate); zero for an empty neighbourhood.
Vector controller(const GainSet& gains, const std::vector<Vector>& received,
                  const Vector& own_estimate);

}  // namespace dpc

#endif  // DPC_PLANT_HPP_
