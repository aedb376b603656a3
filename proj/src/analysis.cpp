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
#include "dpc/analysis.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dpc/error.hpp"

namespace dpc {
namespace {

void require_connected(const GraphSpectrum& spec) {
  if (!spec.connected) {
    throw ValidationError("communication graph is disconnected (lambda_2 = " +
                          std::to_string(spec.fiedler) + ")");
  }
}

void require_schedule_count(const Graph& graph,
                            const std::vector<NoiseSchedule>& noise) {
  if (static_cast<int>(noise.size()) != graph.node_count()) {
    throw ValidationError("expected " + std::to_string(graph.node_count()) +
                          " noise schedules, got " +
                          std::to_string(noise.size()));
  }
}

void require_gain_shape(const Matrix& B, const GainSet& gains, int n) {
  if (gains.K.rows() != B.cols() || gains.K.cols() != n) {
    throw ValidationError(
        "K must be " + std::to_string(B.cols()) + "x" + std::to_string(n) +
        ", got " + std::to_string(gains.K.rows()) + "x" +
        std::to_string(gains.K.cols()));
  }
}

void require_observer_gain(const LtiPlant& plant, const Matrix& L) {
  if (L.rows() != plant.n() || L.cols() != plant.q()) {
    throw ValidationError(
        "L must be " + std::to_string(plant.n()) + "x" +
        std::to_string(plant.q()) + ", got " + std::to_string(L.rows()) + "x" +
        std::to_string(L.cols()));
  }
}

ConditionReport finish(double rho_observer, double rho_consensus,
                       const std::vector<NoiseSchedule>& noise) {
  ConditionReport r;
  r.rho_observer = rho_observer;
  r.rho_consensus = rho_consensus;
  r.pass = is_contracting(rho_observer) && is_contracting(rho_consensus);
  for (const NoiseSchedule& s : noise) {
    const bool ok = is_summable(s);
    r.summable_noise.push_back(ok);
    r.pass = r.pass && ok;
  }
  return r;
}

CompactForm compact(const Matrix& A, const Matrix& BK, const Matrix& BK_err,
                    const Graph& graph) {
  const int N = graph.node_count();
  const Matrix LG = laplacian(graph);
  CompactForm c;
  c.state = kron(Matrix::Identity(N, N), A) - kron(LG, BK);
  c.error = kron(LG, BK_err);
  c.noise = kron(graph.adjacency(), BK);
  return c;
}

}  // namespace

double consensus_radius(const Matrix& A, const Matrix& B, const Matrix& K,
                        const GraphSpectrum& spec) {
  const Matrix BK = B * K;
  const int N1 = static_cast<int>(spec.eigenvalues.size()) - 1;
  const Matrix lam = spec.nonzero_block();
  const Matrix m = kron(Matrix::Identity(N1, N1), A) - kron(lam, BK);
  return spectral_radius(m, "I (x) A - Lambda (x) BK");
}

ConditionReport check_full_conditions(const LtiPlant& plant, const Matrix& L,
                                      const GainSet& gains, const Graph& graph,
                                      const std::vector<NoiseSchedule>& noise) {
  plant.validate();
  require_observer_gain(plant, L);
  require_gain_shape(plant.B, gains, plant.n());
  require_schedule_count(graph, noise);
  const GraphSpectrum spec = spectrum(graph);
  require_connected(spec);
  const double ro = spectral_radius(plant.A - L * plant.C, "A - LC");
  const double rc = consensus_radius(plant.A, plant.B, gains.K, spec);
  return finish(ro, rc, noise);
}

ConditionReport check_reduced_conditions(
    const ReducedForm& rf, const GainSet& gains, const Graph& graph,
    const std::vector<NoiseSchedule>& noise) {
  const Matrix B_bar = rf.B_bar();
  require_gain_shape(B_bar, gains, rf.unmeasured() + rf.outputs());
  require_schedule_count(graph, noise);
  const GraphSpectrum spec = spectrum(graph);
  require_connected(spec);
  const double ro =
      spectral_radius(rf.error_dynamics(), "A11 - Lbar A21");
  const double rc = consensus_radius(rf.A_bar(), B_bar, gains.K, spec);
  return finish(ro, rc, noise);
}

std::vector<double> full_moduli(const LtiPlant& plant, const Matrix& L,
                                const GainSet& gains,
                                const std::vector<int>& degrees) {
  require_observer_gain(plant, L);
  require_gain_shape(plant.B, gains, plant.n());
  const Matrix base = plant.A - L * plant.C;
  const Matrix BK = plant.B * gains.K;
  std::vector<double> out;
  out.reserve(degrees.size());
  for (int d : degrees) out.push_back(induced_one_norm(base - d * BK));
  return out;
}

ReducedModuli reduced_moduli(const ReducedForm& rf, const GainSet& gains,
                             const std::vector<int>& degrees) {
  const int s = rf.unmeasured();
  require_gain_shape(rf.B_bar(), gains, s + rf.outputs());
  const Matrix B1K1 = rf.B1 * gains.K1(s);
  const Matrix B1K2 = rf.B1 * gains.K2(s);
  ReducedModuli out;
  for (int d : degrees) {
    out.v.push_back(induced_one_norm(rf.A11 - d * B1K1));
    out.w.push_back(induced_one_norm(rf.A12 - d * B1K2));
  }
  return out;
}

double theoretical_ms_rate(const ConditionReport& report,
                           const std::vector<NoiseSchedule>& noise) {
  double max_g = 0.0;
  for (const NoiseSchedule& s : noise) {
    if (s.c == 0.0) continue;
    if (!s.is_exponential()) {
      throw ValidationError(
          "rate theorem requires exponential scales, got " + describe(s));
    }
    max_g = std::max(max_g, s.decay());
  }
  return ms_rate(report.rho_consensus, report.rho_observer, max_g);
}

TransformedSystem build_transformed(const LtiPlant& plant, const Matrix& L,
                                    const GainSet& gains, const Graph& graph) {
  plant.validate();
  require_observer_gain(plant, L);
  require_gain_shape(plant.B, gains, plant.n());
  const int N = graph.node_count();
  const int n = plant.n();
  const Matrix LG = laplacian(graph);

  Eigen::SelfAdjointEigenSolver<Matrix> es(LG);
  if (es.info() != Eigen::Success) {
    throw NumericError("Laplacian eigendecomposition did not converge");
  }
  const Vector evals = es.eigenvalues();
  if (evals.size() < 2 || evals(1) < kSpectralZero) {
    throw ValidationError("communication graph is disconnected");
  }

  TransformedSystem t;
  t.Psi = es.eigenvectors();
  t.Psi.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(N)));
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      if (std::fabs(t.Psi(i, j)) > 1e-12) {
        if (t.Psi(i, j) < 0.0) t.Psi.col(j) *= -1.0;
        break;
      }
    }
  }
  const double ortho =
      (t.Psi.transpose() * t.Psi - Matrix::Identity(N, N)).cwiseAbs().maxCoeff();
  if (ortho > 1e-10) {
    throw NumericError("Laplacian eigenvectors not orthonormal (deviation " +
                       std::to_string(ortho) + ")");
  }
  t.Phi = t.Psi.rightCols(N - 1);
  for (int j = 1; j < N; ++j) t.lambda.push_back(evals(j));

  const Matrix BK = plant.B * gains.K;
  Matrix lam = Matrix::Zero(N - 1, N - 1);
  for (int j = 0; j < N - 1; ++j) lam(j, j) = t.lambda[j];
  const Matrix I1 = Matrix::Identity(N - 1, N - 1);
  t.R1 = kron(I1, plant.A) - kron(lam, BK);
  t.R2 = kron(lam, BK);
  t.R3 = kron(I1, plant.A - L * plant.C);
  const Matrix J = Matrix::Constant(N, N, 1.0 / N);
  const Matrix AG = graph.adjacency();
  t.Mtilde = kron(t.Phi.transpose() * (AG - J * AG), BK);
  t.projector = kron(t.Phi.transpose(), Matrix::Identity(n, n));
  return t;
}

CompactForm compact_full(const LtiPlant& plant, const GainSet& gains,
                         const Graph& graph) {
  const Matrix BK = plant.B * gains.K;
  return compact(plant.A, BK, BK, graph);
}

CompactForm compact_reduced(const ReducedForm& rf, const GainSet& gains,
                            const Graph& graph) {
  const Matrix B_bar = rf.B_bar();
  return compact(rf.A_bar(), B_bar * gains.K,
                 B_bar * gains.K1(rf.unmeasured()), graph);
}

}  // namespace dpc
