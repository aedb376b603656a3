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
#ifndef DPC_ANALYSIS_HPP_
#define DPC_ANALYSIS_HPP_

#include <algorithm>
#include <vector>

#include "dpc/graph.hpp"
#include "dpc/matops.hpp"
#include "dpc/noise.hpp"
#include "dpc/plant.hpp"

namespace dpc {

struct ConditionReport {
  double rho_observer = 0.0;
  double rho_consensus = 0.0;
  std::vector<bool> summable_noise;  // one flag per agent
  bool pass = false;
};

// rho(I_{N-1} (x) A - Lambda (x) BK) over the non-zero Laplacian eigenvalues,
// from a dense eigensolve.
double consensus_radius(const Matrix& A, const Matrix& B, const Matrix& K,
                        const GraphSpectrum& spec);

// Throws ValidationError for a disconnected graph or a schedule count that
// differs from the node count.
ConditionReport check_full_conditions(const LtiPlant& plant, const Matrix& L,
                                      const GainSet& gains, const Graph& graph,
                                      const std::vector<NoiseSchedule>& noise);

// The reduced protocol runs in output-canonical coordinates, so the consensus
// radius uses (A_bar, B_bar) there; rf.Lbar must be set.
ConditionReport check_reduced_conditions(
    const ReducedForm& rf, const GainSet& gains, const Graph& graph,
    const std::vector<NoiseSchedule>& noise);

// l_i = ||A - LC - d_i BK||_1
std::vector<double> full_moduli(const LtiPlant& plant, const Matrix& L,
                                const GainSet& gains,
                                const std::vector<int>& degrees);

struct ReducedModuli {
  std::vector<double> v;  // ||A11 - d_i B1 K1||_1
  std::vector<double> w;  // ||A12 - d_i B1 K2||_1
};

ReducedModuli reduced_moduli(const ReducedForm& rf, const GainSet& gains,
                             const std::vector<int>& degrees);

// max(rho_consensus, rho_observer, max_i g_i). Agents with c = 0 carry no
// noise and contribute nothing to the last term. Throws ValidationError if a
// noisy agent has a non-exponential schedule.
double theoretical_ms_rate(const ConditionReport& report,
                           const std::vector<NoiseSchedule>& noise);

inline double ms_rate(double rho_consensus, double rho_observer,
                      double max_g) {
  return std::max({rho_consensus, rho_observer, max_g});
}

// Disagreement coordinates xi = (Phi^T (x) I_n) x, where Psi = [1/sqrt(N), Phi]
// diagonalises the Laplacian:
//   xi+  = R1 xi + R2 psi + Mtilde eta
//   psi+ = R3 psi
// Mtilde acts on the stacked N*n noise vector.
struct TransformedSystem {
  Matrix Psi;  // N x N
  Matrix Phi;  // N x (N-1)
  std::vector<double> lambda;  // lambda_2 .. lambda_N
  Matrix R1, R2, R3;
  Matrix Mtilde;  // (N-1)n x Nn
  Matrix projector;  // Phi^T (x) I_n
};

// Each column of Psi has its first nonzero entry positive. Throws
// NumericError if the eigenvectors are not orthonormal to 1e-10.
TransformedSystem build_transformed(const LtiPlant& plant, const Matrix& L,
                                    const GainSet& gains, const Graph& graph);

// Stacked closed loop  x+ = state x + error e + noise eta,  where e is the
// stacked estimation error (for the reduced path, only its unmeasured part).
struct CompactForm {
  Matrix state;
  Matrix error;
  Matrix noise;
};

CompactForm compact_full(const LtiPlant& plant, const GainSet& gains,
                         const Graph& graph);
CompactForm compact_reduced(const ReducedForm& rf, const GainSet& gains,
                            const Graph& graph);

}  // namespace dpc

#endif  // DPC_ANALYSIS_HPP_
