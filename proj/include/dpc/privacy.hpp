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
#ifndef DPC_PRIVACY_HPP_
#define DPC_PRIVACY_HPP_

#include <string>
#include <variant>
#include <vector>

#include "dpc/analysis.hpp"
#include "dpc/graph.hpp"
#include "dpc/matops.hpp"
#include "dpc/noise.hpp"
#include "dpc/plant.hpp"

namespace dpc {

inline constexpr double kDefaultTol = 1e-10;

// h(j) = alpha^j
struct Geometric {
  double alpha = 0.5;
};

// h(j) given explicitly; zero past the end.
struct CustomDeviation {
  std::vector<double> h;
};

using Deviation = std::variant<Geometric, CustomDeviation>;

double deviation_at(const Deviation& h, long j);  // zero for j < 0

// Two output trajectories that differ only at agent i0, by at most
// m * h(k - k0) in the 1-norm from step k0 on.
struct AdjacencySpec {
  int i0 = 0;
  long k0 = 0;
  double m = 0.5;
  Deviation h = Geometric{};
  // Direction of the worst-case deviation for q > 1 outputs; normalised to
  // unit 1-norm. Empty means the first output.
  Vector direction;

  void validate(int node_count, int outputs) const;
  // m * h(k - k0)
  double magnitude_at(long k) const { return m * deviation_at(h, k - k0); }
  Vector deviation_vector(long k, int outputs) const;
};

enum class EpsilonMethod { kSeries, kClosedExp, kClosedPoly, kSimplifiedBound };
std::string to_string(EpsilonMethod method);

struct EpsilonReport {
  std::vector<double> per_agent;
  double epsilon = 0.0;  // max over agents
  EpsilonMethod method = EpsilonMethod::kSeries;
  double truncation_residual = 0.0;  // upper bound on the omitted tail
};

// ---- closed forms --------------------------------------------------------
// `strict` enforces the narrower hypothesis alpha < l (resp. alpha < v) in
// addition to convergence; violations raise InfeasibleError.

// m g ||L|| / (c (g - l)(g - alpha))
double epsilon_closed_exp_full(double l, double L_norm, double m, double alpha,
                               double c, double g, bool strict = false);

// m g (w + g - v) / (c (g - v)(g - alpha))
double epsilon_closed_exp_reduced(double v, double w, double m, double alpha,
                                  double c, double g, bool strict = false);

// m g ||L|| / (c (g - l)^2); an upper bound on the exact value when l >= alpha.
double simplified_bound_full(double l, double L_norm, double m, double c,
                             double g);

struct TruncatedValue {
  double value = 0.0;
  double residual = 0.0;
};

// Budgets for scales c / (k + 1)^2:
//   full:    ||L|| m / (c (1-l)^3) * sum_b h(b) [(b+2)^2 - (2b^2+6b+3) l + (b+1)^2 l^2]
//   reduced: the same with w in place of ||L|| and v in place of l, plus
//            m / c * sum_b h(b) (b+1)^2
TruncatedValue epsilon_closed_poly_full(double l, double L_norm, double m,
                                        const Deviation& h, double c,
                                        double tol = kDefaultTol);
TruncatedValue epsilon_closed_poly_reduced(double v, double w, double m,
                                           const Deviation& h, double c,
                                           double tol = kDefaultTol);

// ---- series --------------------------------------------------------------
// Sums the budget term by term and stops once a rigorous bound on the
// remaining tail is at most `tol`. Custom noise schedules are rejected since
// no tail bound is available for them.

// gamma * sum_{k>=1} s(k) / b(k) + direct * sum_{k>=0} h_s(k) / b(k), with
// s(k+1) = l s(k) + h_s(k), s(0) = 0 and h_s(k) = h(k - k0).
TruncatedValue scalar_privacy_series(double l, double gamma, double direct,
                                     const AdjacencySpec& adj,
                                     const NoiseSchedule& noise,
                                     double tol = kDefaultTol);

EpsilonReport epsilon_series_full(const std::vector<double>& l, double L_norm,
                                  const AdjacencySpec& adj,
                                  const std::vector<NoiseSchedule>& noise,
                                  double tol = kDefaultTol);
EpsilonReport epsilon_series_reduced(const ReducedModuli& moduli,
                                     const AdjacencySpec& adj,
                                     const std::vector<NoiseSchedule>& noise,
                                     double tol = kDefaultTol);

// Per-agent closed forms. Exponential reports scale by g^-k0, which is exact
// for a deviation that starts at k0; polynomial reports require k0 = 0.
EpsilonReport epsilon_closed_full(const std::vector<double>& l, double L_norm,
                                  const AdjacencySpec& adj,
                                  const std::vector<NoiseSchedule>& noise,
                                  bool strict = false,
                                  double tol = kDefaultTol);
EpsilonReport epsilon_closed_reduced(const ReducedModuli& moduli,
                                     const AdjacencySpec& adj,
                                     const std::vector<NoiseSchedule>& noise,
                                     bool strict = false,
                                     double tol = kDefaultTol);
EpsilonReport simplified_bound_report(const std::vector<double>& l,
                                      double L_norm, const AdjacencySpec& adj,
                                      const std::vector<NoiseSchedule>& noise);

// ---- design --------------------------------------------------------------

struct DesignResult {
  double g = 0.0;
  bool any_g = false;  // m = 0: every admissible g gives epsilon = 0
  double lower = 0.0;  // open admissible interval (lower, 1)
  double margin = 0.0;  // negative when feasible
};

// Root of eps c g^2 - [eps c (alpha + l) + m ||L||] g + eps c alpha l = 0 in
// (max(l, alpha), 1). Throws InfeasibleError carrying the margin
// m ||L|| - eps c (1 - alpha)(1 - l) when it is not negative.
DesignResult design_g_full(double eps_star, double m, double alpha, double l,
                           double c, double L_norm, bool strict = false);

// Root of (eps c - m) x^2 - [eps c (alpha + v) + m (w - v)] x + eps c alpha v
// in (max(v, alpha), 1); margin m (w + 1 - v) - eps c (1 - alpha)(1 - v).
DesignResult design_g_reduced(double eps_star, double m, double alpha,
                              double v, double w, double c,
                              bool strict = false);

// ---- ledger --------------------------------------------------------------

struct LedgerResult {
  std::vector<Vector> beta;     // beta(0..H): observer-message deviation
  std::vector<double> partial;  // partial[k] = sum_{j<=k} ||beta(j)||_1 / b(j)
  double horizon_sum = 0.0;     // partial[H]
  double tail_bound = 0.0;      // bound on sum_{k>H}
  double S = 0.0;               // horizon_sum + tail_bound
  double eps_ref = 0.0;         // series budget of agent i0
  double eps_residual = 0.0;
  bool holds = false;           // S <= eps_ref, up to truncation and rounding
};

// Worst-case deviation of agent i0's messages, propagated through
//   full:    beta(k+1) = (A - LC - d BK) beta(k) + L dy(k)
//   reduced: beta1(k+1) = (A11 - d B1 K1) beta1(k) + (A12 - d B1 K2) dy(k),
//            beta(k) = [beta1(k); dy(k)]
// with dy(k) = m h(k - k0) * direction.
LedgerResult privacy_ledger_full(const LtiPlant& plant, const Matrix& L,
                                 const GainSet& gains, const Graph& graph,
                                 const AdjacencySpec& adj,
                                 const std::vector<NoiseSchedule>& noise,
                                 long horizon, double tol = kDefaultTol);
LedgerResult privacy_ledger_reduced(const ReducedForm& rf,
                                    const GainSet& gains, const Graph& graph,
                                    const AdjacencySpec& adj,
                                    const std::vector<NoiseSchedule>& noise,
                                    long horizon, double tol = kDefaultTol);

}  // namespace dpc

#endif  // DPC_PRIVACY_HPP_
