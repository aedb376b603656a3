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
#ifndef DPC_SIM_HPP_
#define DPC_SIM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dpc/graph.hpp"
#include "dpc/matops.hpp"
#include "dpc/noise.hpp"
#include "dpc/plant.hpp"
#include "dpc/privacy.hpp"

namespace dpc {

enum class ObserverKind { kFull, kReduced };
std::string to_string(ObserverKind kind);

// A fully resolved scenario: every random draw (initial states, per-agent
// noise parameters) has already been made.
struct ScenarioConfig {
  Graph graph{Matrix::Zero(2, 2)};
  LtiPlant plant;
  ObserverKind observer = ObserverKind::kFull;
  Matrix L;              // full observer gain
  ReducedForm reduced;   // reduced path: transform, blocks and Lbar
  GainSet gains;
  std::vector<NoiseSchedule> noise;  // one per agent
  std::vector<Vector> x0;            // physical initial states, length n
  std::vector<Vector> xhat0;         // full: n entries; reduced: n - q
  long horizon = 200;
  RngSpec rng;
  std::optional<AdjacencySpec> adjacency;

  int agents() const { return graph.node_count(); }
  // Throws ValidationError on any dimension mismatch.
  void validate() const;
};

// Per-step record, k = 0..H. Vectors stack the agents: entries
// [i*n, (i+1)*n) belong to agent i. The reduced path runs in output-canonical
// coordinates, so its x, xhat and theta are expressed there and xhat holds
// the estimate the agent actually uses, [xhat1; y].
//
// x, xhat and theta are stored relative to a common moving frame: the
// physical value of agent i is frame[k] + (its block). The protocol is
// invariant under a common shift along a free trajectory, so simulating
// relative to the agents' mean keeps delta, e and message differences
// accurate even when A is unstable and the consensus value grows without
// bound. frame[k] = A frame[k-1] + shift[k] with shift[0] = frame[0].
struct SimTrace {
  ObserverKind observer = ObserverKind::kFull;
  int agents = 0;
  int state_dim = 0;
  int input_dim = 0;
  std::vector<Vector> x, xhat, theta, eta, u, delta, e;
  std::vector<Vector> frame, shift;  // length n each
  std::vector<double> norm_delta, norm_e;
  bool overflow = false;  // stopped early on a non-finite state

  long steps() const { return static_cast<long>(x.size()); }
  Vector agent(const Vector& stacked, int i) const {
    return stacked.segment(i * state_dim, state_dim);
  }
  // Physical values of a relative field (x, xhat or theta) at step k.
  Vector absolute(const std::vector<Vector>& field, long k) const {
    return field[k] + frame[k].replicate(agents, 1);
  }
};

// Runs one realisation. `run` selects the noise substreams.
SimTrace simulate(const ScenarioConfig& cfg, std::uint32_t run = 0);

struct MsEstimate {
  int runs = 0;
  std::vector<double> mean_delta_sq, ci_delta;  // 95% half-widths
  std::vector<double> mean_e_sq, ci_e;
};

// Runs 0..R-1 spread over `threads` workers (0 = hardware concurrency). The
// result does not depend on the thread count.
MsEstimate monte_carlo(const ScenarioConfig& cfg, int runs, int threads = 0);

// exp(slope / 2) of a least-squares line through log E||delta(k)||^2 for
// k in [k_lo, k_hi].
double empirical_rate(const MsEstimate& ms, long k_lo, long k_hi);
double empirical_rate(const std::vector<double>& mean_sq, long k_lo,
                      long k_hi);

// Agent i0's observer replayed on y' = y - m h(k - k0) * direction while every
// received message keeps its factual value. For the reduced path the
// innovation Lbar A21 e1 is also taken from the factual run. Returns
// beta(k) = (factual message) - (counterfactual message) for k = 0..H.
std::vector<Vector> counterfactual_replay(const ScenarioConfig& cfg,
                                          const SimTrace& trace,
                                          const AdjacencySpec& adj);

struct HistogramResult {
  std::vector<double> samples, samples_adjacent;
  std::vector<double> edges;  // bins [edges[j], edges[j+1]), last bin closed
  std::vector<int> counts, counts_adjacent;
  double max_ratio = 1.0;  // over bins with at least min_pooled samples
  int bins_used = 0;
  double eps_to_k = 0.0;   // ledger sum up to k_star
  double bound = 0.0;      // exp(eps_to_k) * slack
  bool pass = false;
};

inline constexpr int kMinPooledCount = 50;
inline constexpr double kHistogramSlack = 1.2;

// Paired runs of agent i0's message component at k_star for y and its
// counterfactual y'. Requires cfg.adjacency.
HistogramResult histogram_experiment(const ScenarioConfig& cfg, int runs,
                                     long k_star, int component,
                                     int threads = 0);

// Freedman-Diaconis edges for the pooled sample.
std::vector<double> fd_edges(std::vector<double> pooled);
std::vector<int> bin_counts(const std::vector<double>& xs,
                            const std::vector<double>& edges);

// Uniform draws in [lo, hi]^dim per agent from the kInitialState streams.
std::vector<Vector> draw_box(const RngSpec& rng, int agents, int dim,
                             double lo, double hi);

}  // namespace dpc

#endif  // DPC_SIM_HPP_
