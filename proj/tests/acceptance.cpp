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
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Oracles are computed here independently of the library wherever the
// criterion allows (closed-form spectra, hand column sums, formulas).

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dpc/analysis.hpp"
#include "dpc/cli.hpp"
#include "dpc/error.hpp"
#include "dpc/io.hpp"
#include "dpc/privacy.hpp"
#include "dpc/sim.hpp"

using namespace dpc;
namespace fs = std::filesystem;

namespace {

const std::string kData = DPC_DATA_DIR;
constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records a failed sub-check; the first few are kept in the detail line.
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    if (pass || detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    pass = false;
  }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : ", ") + s;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Largest absolute column sum, written out by hand.
double column_sum_norm(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += std::fabs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

// Laplacian spectrum of the circulant graph C_N(offsets), in closed form.
std::vector<double> circulant_spectrum(int N, const std::vector<int>& offsets) {
  std::vector<double> out;
  for (int k = 0; k < N; ++k) {
    double lam = 0.0;
    for (int o : offsets) lam += 2.0 - 2.0 * std::cos(2.0 * kPi * k * o / N);
    out.push_back(lam);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Scenario load(const std::string& name) { return load_scenario(kData + "/" + name); }

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int rc = run_cli(args, o, e);
  if (out) *out = o.str();
  return rc;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("dpc_acceptance_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

// ---------------------------------------------------------------------------

Outcome condition_first_example() {
  Outcome o;
  const Matrix A = mat({{1.2, 0}, {0, 0.5}});
  const Matrix B = Matrix::Identity(2, 2);
  const Matrix C = mat({{1, 0}});
  const Matrix L = mat({{0.5}, {0.45}});
  const Matrix K = mat({{0.18, 0}, {0, 0}});
  const LtiPlant plant{A, B, C};
  TopologySpec spec;  // C10(1, 2, 3)
  const Graph g = make_topology(spec);
  const std::vector<NoiseSchedule> noise(10, NoiseSchedule{1.2, Exponential{0.9}});
  const ConditionReport r = check_full_conditions(plant, L, GainSet{K}, g, noise);

  // A - LC = [[0.7, 0], [-0.45, 0.5]] is lower triangular.
  o.expect(std::fabs(r.rho_observer - 0.7) <= 1e-9,
           "rho(A-LC) = " + fmt("%.12g", r.rho_observer));
  double oracle = 0.0;
  const auto lam = circulant_spectrum(10, {1, 2, 3});
  for (std::size_t k = 1; k < lam.size(); ++k) {
    oracle = std::max({oracle, std::fabs(1.2 - 0.18 * lam[k]), 0.5});
  }
  o.expect(std::fabs(r.rho_consensus - oracle) <= 1e-9,
           "consensus radius " + fmt("%.12g", r.rho_consensus) + " vs oracle " +
               fmt("%.12g", oracle));
  o.expect(std::fabs(r.rho_consensus - 0.5) <= 1e-9, "consensus radius != 0.5");
  o.expect(r.pass, "conditions not met");
  o.note("rho(A-LC)=" + fmt("%.10f", r.rho_observer) +
         ", rho_consensus=" + fmt("%.10f", r.rho_consensus));
  return o;
}

Outcome condition_second_example() {
  Outcome o;
  const Scenario s = load("example2.json");
  const ReducedForm& rf = s.config.reduced;
  const Matrix Abar = rf.A_bar();
  o.expect((Abar - mat({{0.5, 1}, {0, 1.5}})).cwiseAbs().maxCoeff() <= 1e-12,
           "A_bar differs from [[0.5,1],[0,1.5]]");
  o.expect(rf.A21.cwiseAbs().maxCoeff() == 0.0, "A21 != 0");
  const double rho = spectral_radius(rf.error_dynamics(), "A11 - Lbar A21");
  o.expect(std::fabs(rho - 0.5) <= 1e-12, "rho = " + fmt("%.17g", rho));
  o.note("rho(A11-Lbar*A21)=" + fmt("%.17g", rho));
  return o;
}

AdjacencySpec geometric(double m, double alpha, long k0 = 0) {
  AdjacencySpec a;
  a.m = m;
  a.h = Geometric{alpha};
  a.k0 = k0;
  return a;
}

Outcome series_closed_grid() {
  Outcome o;
  int tuples = 0;
  double worst = 0.0;
  auto compare = [&](double series, double closed, const std::string& tag) {
    const double rel = std::fabs(series - closed) / closed;
    worst = std::max(worst, rel);
    ++tuples;
    o.expect(rel <= 1e-6, tag + " rel diff " + fmt("%.3g", rel));
  };
  for (double l : {0.1, 0.3, 0.6, 0.8}) {
    for (double alpha : {0.2, 0.5, 0.7}) {
      for (double g : {0.85, 0.9, 0.95, 0.99}) {
        if (!(std::max(l, alpha) < g)) continue;
        for (double c : {0.5, 1.2}) {
          for (double m : {0.5, 1.0}) {
            const AdjacencySpec adj = geometric(m, alpha);
            const NoiseSchedule ns{c, Exponential{g}};
            const double Ln = 0.95;
            compare(epsilon_series_full({l}, Ln, adj, {ns}).epsilon,
                    m * g * Ln / (c * (g - l) * (g - alpha)), "full exp");
            const double w = 1.16;
            compare(epsilon_series_reduced({{l}, {w}}, adj, {ns}).epsilon,
                    m * g * (w + g - l) / (c * (g - l) * (g - alpha)), "reduced exp");
          }
        }
      }
    }
  }
  // Polynomial scales c / (k + 1)^2.
  for (double l : {0.1, 0.5, 0.8}) {
    for (double alpha : {0.2, 0.6}) {
      for (double c : {0.5, 2.0}) {
        const AdjacencySpec adj = geometric(0.5, alpha);
        const NoiseSchedule ns{c, Polynomial{2}};
        compare(epsilon_series_full({l}, 0.95, adj, {ns}).epsilon,
                epsilon_closed_poly_full(l, 0.95, 0.5, adj.h, c).value, "full poly");
        compare(epsilon_series_reduced({{l}, {1.04}}, adj, {ns}).epsilon,
                epsilon_closed_poly_reduced(l, 1.04, 0.5, adj.h, c).value,
                "reduced poly");
      }
    }
  }
  o.expect(tuples >= 200, "only " + std::to_string(tuples) + " tuples");
  o.note(std::to_string(tuples) + " tuples, max rel diff " + fmt("%.2e", worst));
  return o;
}

Outcome scalar_ledger() {
  Outcome o;
  // A = 0.5, B = C = 1, L = 0.2, K = 0.1, one neighbour: A - LC - BK = 0.2.
  const LtiPlant plant{mat({{0.5}}), mat({{1}}), mat({{1}})};
  const Graph g = Graph::from_edges(2, {{0, 1}});
  const std::vector<NoiseSchedule> noise(2, NoiseSchedule{2.0, Exponential{0.8}});
  const LedgerResult r = privacy_ledger_full(plant, mat({{0.2}}), GainSet{mat({{0.1}})},
                                             g, geometric(1.0, 0.4), noise, 200);
  const double closed = epsilon_closed_exp_full(0.2, 0.2, 1.0, 0.4, 2.0, 0.8);
  o.expect(std::fabs(r.S - 1.0 / 3.0) <= 1e-10, "S = " + fmt("%.17g", r.S));
  o.expect(std::fabs(closed - 1.0 / 3.0) <= 1e-10, "closed = " + fmt("%.17g", closed));
  o.expect(r.holds, "ledger does not hold");
  o.note("S=" + fmt("%.15f", r.S) + ", closed form=" + fmt("%.15f", closed));
  return o;
}

Outcome design_round_trips() {
  Outcome o;
  const DesignResult f = design_g_full(10.0, 0.5, 0.5, 0.7, 1.2, 0.95);
  const double ef = epsilon_closed_exp_full(0.7, 0.95, 0.5, 0.5, 1.2, f.g);
  o.expect(f.g > 0.7 && f.g < 1.0, "full g outside (0.7, 1)");
  o.expect(std::fabs(ef - 10.0) <= 1e-8, "full eps(g) = " + fmt("%.17g", ef));
  o.expect(std::fabs(f.g - 0.80457) <= 5e-6, "full g = " + fmt("%.8f", f.g));

  const DesignResult r = design_g_reduced(8.0, 0.5, 0.5, 0.4, 1.04, 0.5);
  const double er = epsilon_closed_exp_reduced(0.4, 1.04, 0.5, 0.5, 0.5, r.g);
  o.expect(std::fabs(er - 8.0) <= 1e-8, "reduced eps(g) = " + fmt("%.17g", er));
  o.expect(std::fabs(r.g - 0.85160) <= 5e-6, "reduced g = " + fmt("%.8f", r.g));

  // Margins m ||L|| - eps c (1 - alpha)(1 - l) and
  // m (w + 1 - v) - eps c (1 - alpha)(1 - v).
  const double full_margin = 0.5 * 0.95 - 1.0 * 1.2 * 0.5 * 0.3;
  try {
    design_g_full(1.0, 0.5, 0.5, 0.7, 1.2, 0.95);
    o.expect(false, "full infeasible input accepted");
  } catch (const InfeasibleError& e) {
    o.expect(std::fabs(e.margin() - full_margin) <= 1e-15,
             "full margin " + fmt("%.17g", e.margin()));
  }
  const double reduced_margin = 0.5 * (1.04 + 1 - 0.4) - 1.0 * 0.5 * 0.5 * 0.6;
  try {
    design_g_reduced(1.0, 0.5, 0.5, 0.4, 1.04, 0.5);
    o.expect(false, "reduced infeasible input accepted");
  } catch (const InfeasibleError& e) {
    o.expect(std::fabs(e.margin() - reduced_margin) <= 1e-15,
             "reduced margin " + fmt("%.17g", e.margin()));
  }
  o.note("g_full=" + fmt("%.6f", f.g) + ", g_reduced=" + fmt("%.6f", r.g));
  return o;
}

// Random connected graph: a ring plus independent chords.
Graph random_graph(std::mt19937_64& gen, int N) {
  std::bernoulli_distribution chord(0.3);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      if (j == i + 1 || (i == 0 && j == N - 1) || chord(gen)) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(N, edges);
}

Matrix random_matrix(std::mt19937_64& gen, int r, int c, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = u(gen);
  return m;
}

Outcome ledger_soundness() {
  Outcome o;
  std::mt19937_64 gen(20260601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int made[2] = {0, 0};
  double worst_beta = 0.0, worst_slack = -1e300;
  while (made[0] + made[1] < 50) {
    const bool reduced = (made[0] + made[1]) % 2 == 1;
    const int n = 2 + static_cast<int>(u(gen) * 2);
    const int N = 5 + static_cast<int>(u(gen) * 6);
    ScenarioConfig cfg;
    cfg.graph = random_graph(gen, N);
    const auto d = degrees(cfg.graph);
    const int dmax = *std::max_element(d.begin(), d.end());
    cfg.plant = LtiPlant{random_matrix(gen, n, n, 0.7), random_matrix(gen, n, n, 1.0),
                         random_matrix(gen, 1, n, 1.0)};
    cfg.gains.K = random_matrix(gen, n, n, 0.3 / dmax);
    std::vector<double> rate;
    if (reduced) {
      cfg.observer = ObserverKind::kReduced;
      cfg.reduced = canonicalize_output(cfg.plant);
      cfg.reduced.Lbar = random_matrix(gen, n - 1, 1, 0.5);
      rate = reduced_moduli(cfg.reduced, cfg.gains, d).v;
    } else {
      cfg.L = random_matrix(gen, n, 1, 0.5);
      rate = full_moduli(cfg.plant, cfg.L, cfg.gains, d);
    }
    const double alpha = 0.1 + 0.8 * u(gen);
    const double lower = std::max(*std::max_element(rate.begin(), rate.end()), alpha);
    if (!(lower < 0.97)) continue;  // not feasible, draw again
    for (int i = 0; i < N; ++i) {
      const double g = lower + (1.0 - lower) * (0.2 + 0.6 * u(gen));
      cfg.noise.push_back(NoiseSchedule{0.5 + 1.5 * u(gen), Exponential{g}});
    }
    // A diverging consensus makes the trace grow without bound and the replay
    // then subtracts numbers of order 1e16; keep convergent scenarios only.
    const ConditionReport cond =
        reduced ? check_reduced_conditions(cfg.reduced, cfg.gains, cfg.graph, cfg.noise)
                : check_full_conditions(cfg.plant, cfg.L, cfg.gains, cfg.graph, cfg.noise);
    if (!cond.pass) continue;
    AdjacencySpec adj = geometric(0.1 + 0.9 * u(gen), alpha,
                                  static_cast<long>(u(gen) * 3));
    adj.i0 = static_cast<int>(u(gen) * N);
    cfg.adjacency = adj;
    cfg.horizon = 80;
    cfg.rng.master_seed = made[0] + made[1];
    cfg.x0 = draw_box(cfg.rng, N, n, -5, 5);
    cfg.xhat0.assign(N, Vector::Zero(reduced ? n - 1 : n));

    const LedgerResult r =
        reduced ? privacy_ledger_reduced(cfg.reduced, cfg.gains, cfg.graph, adj,
                                         cfg.noise, cfg.horizon)
                : privacy_ledger_full(cfg.plant, cfg.L, cfg.gains, cfg.graph, adj,
                                      cfg.noise, cfg.horizon);
    const EpsilonReport rep =
        reduced ? epsilon_series_reduced(reduced_moduli(cfg.reduced, cfg.gains, d), adj,
                                         cfg.noise)
                : epsilon_series_full(rate, induced_one_norm(cfg.L), adj, cfg.noise);
    const std::string tag = std::string(reduced ? "reduced" : "full") + " scenario " +
                            std::to_string(made[reduced]);
    o.expect(r.holds, tag + ": ledger does not hold");
    o.expect(r.S <= rep.epsilon + rep.truncation_residual + 1e-10 * std::max(1.0, rep.epsilon),
             tag + ": S " + fmt("%.6g", r.S) + " > eps " + fmt("%.6g", rep.epsilon));
    worst_slack = std::max(worst_slack, r.S - rep.epsilon);

    const SimTrace tr = simulate(cfg, 0);
    o.expect(!tr.overflow, tag + ": overflow");
    const auto beta = counterfactual_replay(cfg, tr, adj);
    for (std::size_t k = 0; k < beta.size() && k < r.beta.size(); ++k) {
      const double diff = (beta[k] - r.beta[k]).cwiseAbs().maxCoeff();
      worst_beta = std::max(worst_beta, diff);
    }
    o.expect(beta.size() == r.beta.size(), tag + ": replay length");
    ++made[reduced];
  }
  o.expect(worst_beta <= 1e-10, "replay beta differs by " + fmt("%.3g", worst_beta));
  o.note(std::to_string(made[0]) + " full + " + std::to_string(made[1]) +
         " reduced, max(S - eps)=" + fmt("%.3g", worst_slack) +
         ", max |beta_replay - beta|=" + fmt("%.2e", worst_beta));
  return o;
}

Matrix power(const Matrix& m, long k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (long i = 0; i < k; ++i) out = out * m;
  return out;
}

Outcome noise_free_decay() {
  Outcome o;
  Scenario s = load("example1.json");
  for (auto& ns : s.config.noise) ns.c = 0.0;
  const SimTrace tr = simulate(s.config);
  o.expect(tr.steps() == 201, "trace truncated");
  const double ratio = tr.norm_delta.back() / tr.norm_delta.front();
  o.expect(ratio < 1e-6, "||delta(200)||/||delta(0)|| = " + fmt("%.3g", ratio));
  const Matrix F = s.config.plant.A - s.config.L * s.config.plant.C;
  double worst = 0.0;
  Matrix Fk = Matrix::Identity(2, 2);
  for (long k = 0; k < tr.steps(); ++k) {
    for (int i = 0; i < 10; ++i) {
      const Vector want = Fk * tr.agent(tr.e[0], i);
      worst = std::max(worst, (tr.agent(tr.e[k], i) - want).cwiseAbs().maxCoeff());
    }
    Fk = F * Fk;
  }
  o.expect(worst <= 1e-10, "e(k) deviates by " + fmt("%.3g", worst));

  Scenario r = load("example2_degree8.json");
  for (auto& ns : r.config.noise) ns.c = 0.0;
  const SimTrace rt = simulate(r.config);
  const Matrix Fr = r.config.reduced.error_dynamics();
  double worst_r = 0.0;
  for (long k = 0; k < rt.steps(); ++k) {
    const Matrix Frk = power(Fr, k);
    for (int i = 0; i < 10; ++i) {
      const Vector want = Frk * rt.agent(rt.e[0], i).head(1);
      worst_r = std::max(worst_r, std::fabs(rt.agent(rt.e[k], i)(0) - want(0)));
    }
  }
  o.expect(worst_r <= 1e-10, "reduced e1(k) deviates by " + fmt("%.3g", worst_r));
  o.note("delta ratio=" + fmt("%.3g", ratio) + ", max e error=" + fmt("%.2e", worst) +
         ", reduced max e1 error=" + fmt("%.2e", worst_r));
  return o;
}

Outcome noisy_mean_square() {
  Outcome o;
  const Scenario s = load("example1.json");
  const MsEstimate ms = monte_carlo(s.config, 500, 1);
  const long H = s.config.horizon;
  const double ratio = ms.mean_delta_sq[H] / ms.mean_delta_sq[0];
  o.expect(ratio < 1e-3, "E||delta(200)||^2 ratio " + fmt("%.3g", ratio));
  const ConditionReport rep = check_full_conditions(s.config.plant, s.config.L,
                                                    s.config.gains, s.config.graph,
                                                    s.config.noise);
  const double theory = theoretical_ms_rate(rep, s.config.noise);
  const double rate = empirical_rate(ms, H / 2, H);
  o.expect(rate <= theory + 0.05, "rate " + fmt("%.4f", rate) + " > " +
                                      fmt("%.4f", theory) + " + 0.05");
  o.note("E-ratio=" + fmt("%.3g", ratio) + ", rate=" + fmt("%.4f", rate) +
         " (window [100, 200]), theory=" + fmt("%.4f", theory));
  return o;
}

double laplace_cdf(double x) {
  return x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
}

Outcome laplace_statistics() {
  Outcome o;
  CounterRng rng(RngSpec{2026}, {0, 0, 0, StreamPurpose::kNoise});
  const int count = 1000000;
  const Vector draws = sample_laplace(rng, 1.0, count);
  std::vector<double> xs(draws.data(), draws.data() + count);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= count;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= count - 1;
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < count; ++i) {
    const double F = laplace_cdf(xs[i]);
    ks = std::max({ks, F - static_cast<double>(i) / count,
                   static_cast<double>(i + 1) / count - F});
  }
  o.expect(std::fabs(mean) <= 0.0042, "mean " + fmt("%.4g", mean));
  o.expect(std::fabs(var - 2.0) <= 0.1, "variance " + fmt("%.4g", var));
  o.expect(ks < 0.002, "KS " + fmt("%.4g", ks));
  o.note("mean=" + fmt("%.5f", mean) + ", var=" + fmt("%.5f", var) +
         ", KS=" + fmt("%.5f", ks));
  return o;
}

// Closed forms evaluated at the echoed per-agent draws and hand moduli.
Outcome headline_budgets() {
  Outcome o;
  for (const char* name : {"example1.json", "example2.json"}) {
    const std::string path = kData + "/" + name;
    std::string text;
    const int rc = run({"epsilon", "--config", path}, &text);
    o.expect(rc == 0, std::string(name) + ": epsilon exit " + std::to_string(rc));
    if (rc != 0) continue;
    const Json s = Json::parse(text);
    const Json& cfg = s["config"];
    const Scenario sc = parse_scenario(cfg);
    const bool reduced = cfg["observer"]["kind"] == "reduced";
    const double m = cfg["adjacency"]["m"];
    const double alpha = cfg["adjacency"]["alpha"];
    const auto d = degrees(sc.config.graph);
    const Matrix A = sc.config.plant.A, B = sc.config.plant.B, C = sc.config.plant.C;
    const Matrix K = sc.config.gains.K;
    double eps_max = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double c = cfg["noise"]["agents"][i]["c"];
      const double g = cfg["noise"]["agents"][i]["g"];
      double want;
      if (reduced) {
        const Matrix P = sc.config.reduced.P;
        const Matrix Abar = P * A * P.inverse();
        const Matrix Bbar = P * B;
        const double v = std::fabs(Abar(0, 0) - d[i] * (Bbar.row(0) * K.col(0))(0));
        const double w = std::fabs(Abar(0, 1) - d[i] * (Bbar.row(0) * K.col(1))(0));
        want = m * g * (w + g - v) / (c * (g - v) * (g - alpha));
      } else {
        const Matrix L = sc.config.L;
        const double l = column_sum_norm(A - L * C - d[i] * B * K);
        want = m * g * column_sum_norm(L) / (c * (g - l) * (g - alpha));
      }
      const double got = s["closed_form"]["per_agent"][i];
      const double series = s["series"]["per_agent"][i];
      o.expect(std::fabs(got - want) <= 1e-10 * std::max(1.0, want),
               std::string(name) + " agent " + std::to_string(i) + ": " +
                   fmt("%.17g", got) + " vs " + fmt("%.17g", want));
      o.expect(std::fabs(series - want) <= 1e-9 * std::max(1.0, want),
               std::string(name) + " series agent " + std::to_string(i));
      eps_max = std::max(eps_max, want);
    }
    const double lo = reduced ? 1.0 : 3.0, hi = reduced ? 20.0 : 80.0;
    o.expect(eps_max >= lo && eps_max <= hi,
             std::string(name) + ": eps " + fmt("%.4g", eps_max) + " outside range");
    std::string audit;
    o.expect(run({"audit", "--config", path}, &audit) == 0, "audit failed");
    const Json a = Json::parse(audit);
    o.expect(a["ledger"]["holds"] == true, std::string(name) + ": ledger fails");
    o.note(std::string(reduced ? "second" : "first") + " eps=" + fmt("%.4f", eps_max) +
           " ledger S=" + fmt("%.4f", a["ledger"]["S"].get<double>()));
  }
  return o;
}

Outcome histogram_check() {
  Outcome o;
  const struct {
    const char* file;
    long k;
  } cases[] = {{"example1.json", 2}, {"example2.json", 4}};
  for (const auto& c : cases) {
    const Scenario s = load(c.file);
    const HistogramResult h = histogram_experiment(s.config, 1000, c.k, 0, 1);
    o.expect(h.bins_used > 0, std::string(c.file) + ": no usable bins");
    o.expect(h.max_ratio <= std::exp(h.eps_to_k) * 1.2,
             std::string(c.file) + ": ratio " + fmt("%.4g", h.max_ratio) + " > " +
                 fmt("%.4g", h.bound));
    o.note(std::string(c.file) + " k=" + std::to_string(c.k) + " ratio=" +
           fmt("%.3f", h.max_ratio) + " bound=" + fmt("%.3f", h.bound) + " over " +
           std::to_string(h.bins_used) + " bins");
  }
  return o;
}

// Every output file, name -> bytes.
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    out.emplace_back(e.path().filename().string(), read_file(e.path().string()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism() {
  Outcome o;
  int files = 0;
  const std::vector<std::vector<std::string>> commands = {
      {"check"}, {"epsilon"}, {"audit"}, {"simulate"}, {"montecarlo"},
      {"histogram", "--runs", "1000"}};
  for (const char* name : {"example1.json", "example2_degree8.json"}) {
    for (const auto& command : commands) {
      std::vector<std::pair<std::string, std::string>> snaps[2];
      for (int t = 0; t < 2; ++t) {
        const fs::path dir = scratch("run" + std::to_string(t));
        std::vector<std::string> args = command;
        args.insert(args.end(), {"--config", kData + "/" + name, "--out", dir.string()});
        run(args);
        snaps[t] = snapshot(dir);
      }
      o.expect(!snaps[0].empty() && snaps[0] == snaps[1],
               std::string(name) + " " + command[0] + ": outputs differ");
      files += static_cast<int>(snaps[0].size());
    }
  }
  // The echoed config reproduces the run byte for byte.
  const fs::path first = scratch("echo_a"), second = scratch("echo_b");
  std::string text;
  run({"simulate", "--config", kData + "/example1.json", "--out", first.string()}, &text);
  const fs::path echo = scratch("echo_cfg");
  write_file(echo.string(), "echo.json", Json::parse(text)["config"].dump(2));
  run({"simulate", "--config", (echo / "echo.json").string(), "--out", second.string()});
  for (const char* f : {"trace.csv", "norms.csv", "norms.svg"}) {
    o.expect(read_file((first / f).string()) == read_file((second / f).string()),
             std::string("echo rerun differs in ") + f);
  }
  o.note(std::to_string(files) + " files compared, echo rerun identical");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = none stated
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "condition reproduction, first example", 1.0, condition_first_example},
      {2, "condition reproduction, second example", 0.0, condition_second_example},
      {3, "series and closed forms agree on a grid", 10.0, series_closed_grid},
      {4, "scalar ledger identity", 0.0, scalar_ledger},
      {5, "design round trips and infeasibility margins", 0.0, design_round_trips},
      {6, "ledger soundness and replay on 50 random scenarios", 0.0, ledger_soundness},
      {7, "noise-free consensus decay", 0.0, noise_free_decay},
      {8, "noisy mean-square behaviour", 60.0, noisy_mean_square},
      {9, "Laplace sampler statistics", 0.0, laplace_statistics},
      {10, "budgets on the default topology", 0.0, headline_budgets},
      {11, "histogram privacy check", 120.0, histogram_check},
      {12, "determinism of written outputs", 0.0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.expect(false, "took " + fmt("%.1f", secs) + " s, budget " + fmt("%.0f", c.budget_s));
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  fs::remove_all(fs::temp_directory_path() /
                 ("dpc_acceptance_" + std::to_string(::getpid())));
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
