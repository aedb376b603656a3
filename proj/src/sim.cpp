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
#include "dpc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "dpc/error.hpp"

namespace dpc {
namespace {

void require_size(std::size_t got, std::size_t want, const std::string& what) {
  if (got != want) {
    throw ValidationError(what + ": expected " + std::to_string(want) +
                          ", got " + std::to_string(got));
  }
}

void require_rows(const Matrix& m, int rows, int cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ValidationError(what + " must be " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ", got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

int resolve_threads(int threads, int work) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::clamp(threads, 1, std::max(1, work));
}

// Calls body(r) for r = 0..count-1 on `threads` workers.
template <typename Body>
void parallel_for(int count, int threads, Body body) {
  threads = resolve_threads(threads, count);
  if (threads == 1) {
    for (int r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int r = next++; r < count; r = next++) body(r);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

double kahan_mean(const std::vector<double>& xs) {
  double sum = 0.0, carry = 0.0;
  for (double v : xs) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(xs.size());
}

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string to_string(ObserverKind kind) {
  return kind == ObserverKind::kFull ? "full" : "reduced";
}

void ScenarioConfig::validate() const {
  plant.validate();
  const int N = agents();
  const int n = plant.n();
  require_rows(gains.K, plant.r(), n, "K");
  require_size(noise.size(), N, "noise schedules");
  require_size(x0.size(), N, "initial states");
  require_size(xhat0.size(), N, "initial estimates");
  if (horizon < 1) throw ValidationError("horizon H must be >= 1");
  for (int i = 0; i < N; ++i) {
    noise[i].validate();
    if (const auto* c = std::get_if<Custom>(&noise[i].kind)) {
      if (static_cast<long>(c->p.size()) <= horizon && noise[i].c > 0.0) {
        throw ValidationError("custom schedule of agent " + std::to_string(i) +
                              " has " + std::to_string(c->p.size()) +
                              " entries, horizon needs " +
                              std::to_string(horizon + 1));
      }
    }
    require_rows(x0[i], n, 1, "x0 of agent " + std::to_string(i));
    require_finite(x0[i], "x0");
  }
  if (observer == ObserverKind::kFull) {
    require_rows(L, n, plant.q(), "L");
    for (int i = 0; i < N; ++i) {
      require_rows(xhat0[i], n, 1, "xhat0 of agent " + std::to_string(i));
    }
  } else {
    const int s = n - plant.q();
    require_rows(reduced.P, n, n, "P");
    require_rows(reduced.Lbar, s, plant.q(), "Lbar");
    for (int i = 0; i < N; ++i) {
      require_rows(xhat0[i], s, 1, "xhat0 of agent " + std::to_string(i));
    }
  }
  if (adjacency) adjacency->validate(N, plant.q());
}

SimTrace simulate(const ScenarioConfig& cfg, std::uint32_t run) {
  cfg.validate();
  const int N = cfg.agents();
  const int n = cfg.plant.n();
  const int q = cfg.plant.q();
  const bool reduced = cfg.observer == ObserverKind::kReduced;
  const ReducedForm& rf = cfg.reduced;
  const Matrix A = reduced ? rf.A_bar() : cfg.plant.A;
  const Matrix B = reduced ? rf.B_bar() : cfg.plant.B;
  const FullObserver obs{cfg.L};

  std::vector<std::vector<int>> nbrs(N);
  for (int i = 0; i < N; ++i) nbrs[i] = cfg.graph.neighbors(i);

  SimTrace tr;
  tr.observer = cfg.observer;
  tr.agents = N;
  tr.state_dim = n;
  tr.input_dim = cfg.plant.r();

  const int s = n - q;
  std::vector<Vector> x(N), est(N);
  Vector frame = Vector::Zero(n);
  for (int i = 0; i < N; ++i) {
    x[i] = reduced ? Vector(rf.P * cfg.x0[i]) : cfg.x0[i];
    frame += x[i] / N;
  }
  for (int i = 0; i < N; ++i) {
    x[i] -= frame;
    est[i] = cfg.xhat0[i] - (reduced ? Vector(frame.head(s)) : frame);
  }
  Vector shift = frame;

  for (long k = 0; k <= cfg.horizon; ++k) {
    std::vector<Vector> y(N), own(N), theta(N), eta(N), u(N);
    for (int i = 0; i < N; ++i) {
      y[i] = reduced ? Vector(x[i].tail(q)) : Vector(cfg.plant.C * x[i]);
      if (reduced) {
        own[i].resize(n);
        own[i] << est[i], y[i];
      } else {
        own[i] = est[i];
      }
      const NoiseSchedule& ns = cfg.noise[i];
      if (ns.c > 0.0) {
        CounterRng rng(cfg.rng, {run, static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(k),
                                 StreamPurpose::kNoise});
        eta[i] = sample_laplace(rng, scale_at(ns, k), n);
      } else {
        eta[i] = Vector::Zero(n);
      }
      theta[i] = own[i] + eta[i];
    }
    for (int i = 0; i < N; ++i) {
      std::vector<Vector> received;
      received.reserve(nbrs[i].size());
      for (int j : nbrs[i]) received.push_back(theta[j]);
      u[i] = controller(cfg.gains, received, own[i]);
    }

    Vector xs(N * n), es(N * n), th(N * n), et(N * n), us(N * cfg.plant.r()),
        err(N * n), delta(N * n);
    Vector mean = Vector::Zero(n);
    for (int i = 0; i < N; ++i) mean += x[i] / N;
    for (int i = 0; i < N; ++i) {
      xs.segment(i * n, n) = x[i];
      es.segment(i * n, n) = own[i];
      th.segment(i * n, n) = theta[i];
      et.segment(i * n, n) = eta[i];
      us.segment(i * cfg.plant.r(), cfg.plant.r()) = u[i];
      err.segment(i * n, n) = x[i] - own[i];
      delta.segment(i * n, n) = x[i] - mean;
    }
    tr.x.push_back(xs);
    tr.xhat.push_back(es);
    tr.theta.push_back(th);
    tr.eta.push_back(et);
    tr.u.push_back(us);
    tr.delta.push_back(delta);
    tr.e.push_back(err);
    tr.frame.push_back(frame);
    tr.shift.push_back(shift);
    tr.norm_delta.push_back(delta.norm());
    tr.norm_e.push_back(err.norm());
    if (k == cfg.horizon) break;

    // Advance in the frame propagated by A, then re-centre on the new mean.
    bool finite = true;
    shift = Vector::Zero(n);
    for (int i = 0; i < N; ++i) {
      const Vector next = A * x[i] + B * u[i];
      if (reduced) {
        est[i] = reduced_observer_step(rf, est[i], u[i], y[i], next.tail(q));
      } else {
        est[i] = full_observer_step(cfg.plant, obs, est[i], u[i], y[i]);
      }
      x[i] = next;
      shift += next / N;
    }
    for (int i = 0; i < N; ++i) {
      x[i] -= shift;
      est[i] -= reduced ? Vector(shift.head(s)) : shift;
      finite = finite && x[i].allFinite() && est[i].allFinite();
    }
    frame = A * frame + shift;
    if (!finite || !frame.allFinite()) {
      tr.overflow = true;
      break;
    }
  }
  return tr;
}

MsEstimate monte_carlo(const ScenarioConfig& cfg, int runs, int threads) {
  if (runs < 2) throw ValidationError("Monte Carlo needs at least 2 runs");
  cfg.validate();
  const long steps = cfg.horizon + 1;
  std::vector<std::vector<double>> dsq(runs), esq(runs);
  parallel_for(runs, threads, [&](int r) {
    const SimTrace tr = simulate(cfg, static_cast<std::uint32_t>(r));
    if (tr.overflow) {
      throw NumericError("run " + std::to_string(r) + " overflowed at step " +
                         std::to_string(tr.steps()));
    }
    dsq[r].resize(steps);
    esq[r].resize(steps);
    for (long k = 0; k < steps; ++k) {
      dsq[r][k] = tr.norm_delta[k] * tr.norm_delta[k];
      esq[r][k] = tr.norm_e[k] * tr.norm_e[k];
    }
  });

  MsEstimate ms;
  ms.runs = runs;
  const double z = 1.959963984540054;
  std::vector<double> col(runs);
  auto summarize = [&](const std::vector<std::vector<double>>& data, long k,
                       double& mean, double& ci) {
    for (int r = 0; r < runs; ++r) col[r] = data[r][k];
    mean = kahan_mean(col);
    for (int r = 0; r < runs; ++r) col[r] = (data[r][k] - mean) * (data[r][k] - mean);
    const double var = kahan_mean(col) * runs / (runs - 1.0);
    ci = z * std::sqrt(var / runs);
  };
  for (long k = 0; k < steps; ++k) {
    double m1, c1, m2, c2;
    summarize(dsq, k, m1, c1);
    summarize(esq, k, m2, c2);
    ms.mean_delta_sq.push_back(m1);
    ms.ci_delta.push_back(c1);
    ms.mean_e_sq.push_back(m2);
    ms.ci_e.push_back(c2);
  }
  return ms;
}

double empirical_rate(const std::vector<double>& mean_sq, long k_lo,
                      long k_hi) {
  if (k_lo < 0 || k_hi >= static_cast<long>(mean_sq.size()) || k_hi <= k_lo) {
    throw ValidationError("rate window [" + std::to_string(k_lo) + ", " +
                          std::to_string(k_hi) + "] must lie inside [0, " +
                          std::to_string(mean_sq.size()) + ") with k_lo < k_hi");
  }
  double sk = 0, sy = 0, skk = 0, sky = 0;
  const double count = static_cast<double>(k_hi - k_lo + 1);
  for (long k = k_lo; k <= k_hi; ++k) {
    if (!(mean_sq[k] > 0.0) || !std::isfinite(mean_sq[k])) {
      throw ValidationError(
          "mean square value at k = " + std::to_string(k) +
          " is not positive (noise floor reached); try a smaller k_hi");
    }
    const double kk = static_cast<double>(k);
    const double y = std::log(mean_sq[k]);
    sk += kk;
    sy += y;
    skk += kk * kk;
    sky += kk * y;
  }
  const double slope = (count * sky - sk * sy) / (count * skk - sk * sk);
  return std::exp(slope / 2.0);
}

double empirical_rate(const MsEstimate& ms, long k_lo, long k_hi) {
  return empirical_rate(ms.mean_delta_sq, k_lo, k_hi);
}

std::vector<Vector> counterfactual_replay(const ScenarioConfig& cfg,
                                          const SimTrace& trace,
                                          const AdjacencySpec& adj) {
  adj.validate(cfg.agents(), cfg.plant.q());
  const int n = cfg.plant.n();
  const int q = cfg.plant.q();
  const int s = n - q;
  const int i0 = adj.i0;
  const auto nbrs = cfg.graph.neighbors(i0);
  const bool reduced = cfg.observer == ObserverKind::kReduced;
  const ReducedForm& rf = cfg.reduced;
  const FullObserver obs{cfg.L};

  std::vector<Vector> beta;
  // Counterfactual estimate, kept in the trace's moving frame.
  Vector est = cfg.xhat0[i0] -
               (reduced ? Vector(trace.frame[0].head(s)) : trace.frame[0]);
  for (long k = 0; k < trace.steps(); ++k) {
    const Vector x = trace.agent(trace.x[k], i0);
    const Vector y = reduced ? Vector(x.tail(q)) : Vector(cfg.plant.C * x);
    const Vector y_cf = y - adj.deviation_vector(k, q);
    Vector own(n);
    if (reduced) {
      own << est, y_cf;
    } else {
      own = est;
    }
    beta.push_back(trace.agent(trace.xhat[k], i0) - own);

    if (k + 1 == trace.steps()) break;
    std::vector<Vector> received;
    for (int j : nbrs) received.push_back(trace.agent(trace.theta[k], j));
    const Vector u = controller(cfg.gains, received, own);
    if (reduced) {
      const Vector e1 = trace.agent(trace.e[k], i0).head(s);
      est = rf.A11 * est + rf.A12 * y_cf + rf.B1 * u + rf.Lbar * rf.A21 * e1;
      est -= trace.shift[k + 1].head(s);
    } else {
      est = full_observer_step(cfg.plant, obs, est, u, y_cf);
      est -= trace.shift[k + 1];
    }
  }
  return beta;
}

std::vector<double> fd_edges(std::vector<double> pooled) {
  if (pooled.empty()) throw ValidationError("cannot bin an empty sample");
  std::sort(pooled.begin(), pooled.end());
  const double lo = pooled.front();
  const double hi = pooled.back();
  if (!(hi > lo)) return {lo - 0.5, lo + 0.5};
  const double iqr = quantile(pooled, 0.75) - quantile(pooled, 0.25);
  const double width =
      2.0 * iqr / std::cbrt(static_cast<double>(pooled.size()));
  long bins = 1;
  if (width > 0.0) {
    bins = std::clamp<long>(static_cast<long>(std::ceil((hi - lo) / width)), 1,
                            100000);
  }
  std::vector<double> edges(bins + 1);
  for (long j = 0; j <= bins; ++j) {
    edges[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(bins);
  }
  edges.back() = hi;
  return edges;
}

std::vector<int> bin_counts(const std::vector<double>& xs,
                            const std::vector<double>& edges) {
  const long bins = static_cast<long>(edges.size()) - 1;
  std::vector<int> counts(bins, 0);
  for (double x : xs) {
    if (x < edges.front() || x > edges.back()) continue;
    long j = std::upper_bound(edges.begin(), edges.end(), x) - edges.begin() - 1;
    counts[std::clamp<long>(j, 0, bins - 1)]++;
  }
  return counts;
}

HistogramResult histogram_experiment(const ScenarioConfig& cfg, int runs,
                                     long k_star, int component, int threads) {
  if (!cfg.adjacency) {
    throw ValidationError("histogram experiment needs an adjacency section");
  }
  if (runs < 1) throw ValidationError("histogram needs at least one run");
  if (k_star < 0) throw ValidationError("k_star must be >= 0");
  if (component < 0 || component >= cfg.plant.n()) {
    throw ValidationError("component " + std::to_string(component) +
                          " outside [0, " + std::to_string(cfg.plant.n()) + ")");
  }
  const AdjacencySpec& adj = *cfg.adjacency;
  ScenarioConfig short_cfg = cfg;
  short_cfg.horizon = std::max<long>(k_star, 1);
  short_cfg.validate();

  HistogramResult h;
  h.samples.resize(runs);
  h.samples_adjacent.resize(runs);
  const int n = cfg.plant.n();
  parallel_for(runs, threads, [&](int r) {
    const SimTrace tr = simulate(short_cfg, static_cast<std::uint32_t>(r));
    if (tr.steps() <= k_star) {
      throw NumericError("run " + std::to_string(r) + " overflowed before k_star");
    }
    const auto beta = counterfactual_replay(short_cfg, tr, adj);
    const double theta = tr.theta[k_star](adj.i0 * n + component) +
                         tr.frame[k_star](component);
    h.samples[r] = theta;
    h.samples_adjacent[r] = theta - beta[k_star](component);
  });

  std::vector<double> pooled = h.samples;
  pooled.insert(pooled.end(), h.samples_adjacent.begin(),
                h.samples_adjacent.end());
  h.edges = fd_edges(pooled);
  h.counts = bin_counts(h.samples, h.edges);
  h.counts_adjacent = bin_counts(h.samples_adjacent, h.edges);
  h.max_ratio = 1.0;
  for (std::size_t j = 0; j < h.counts.size(); ++j) {
    const int a = h.counts[j];
    const int b = h.counts_adjacent[j];
    if (a + b < kMinPooledCount) continue;
    ++h.bins_used;
    const double ratio = (a == 0 || b == 0)
                             ? std::numeric_limits<double>::infinity()
                             : std::max(static_cast<double>(a) / b,
                                        static_cast<double>(b) / a);
    h.max_ratio = std::max(h.max_ratio, ratio);
  }

  const LedgerResult ledger =
      cfg.observer == ObserverKind::kFull
          ? privacy_ledger_full(cfg.plant, cfg.L, cfg.gains, cfg.graph, adj,
                                cfg.noise, k_star)
          : privacy_ledger_reduced(cfg.reduced, cfg.gains, cfg.graph, adj,
                                   cfg.noise, k_star);
  h.eps_to_k = ledger.partial[k_star];
  h.bound = std::exp(h.eps_to_k) * kHistogramSlack;
  h.pass = h.max_ratio <= h.bound;
  return h;
}

std::vector<Vector> draw_box(const RngSpec& rng, int agents, int dim,
                             double lo, double hi) {
  if (!(hi >= lo)) throw ValidationError("initial-state box needs lo <= hi");
  std::vector<Vector> out(agents);
  for (int i = 0; i < agents; ++i) {
    CounterRng gen(rng, {0, static_cast<std::uint32_t>(i), 0,
                         StreamPurpose::kInitialState});
    out[i].resize(dim);
    for (int d = 0; d < dim; ++d) out[i](d) = lo + (hi - lo) * gen.uniform_open();
  }
  return out;
}

}  // namespace dpc
