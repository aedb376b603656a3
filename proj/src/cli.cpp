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
#include "dpc/cli.hpp"

#include <cstdlib>
#include <optional>

#include "CLI11.hpp"

#include "dpc/analysis.hpp"
#include "dpc/error.hpp"
#include "dpc/io.hpp"
#include "dpc/plot.hpp"
#include "dpc/privacy.hpp"
#include "dpc/sim.hpp"

namespace dpc {
namespace {

struct Options {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool strict_paper = false;
  std::optional<double> tol;
  std::string format = "csv";
  int threads = 0;
  std::optional<double> eps_star;
  std::optional<int> runs;
  std::optional<long> k_lo, k_hi;
  long k_star = -1;
  int component = 0;
  std::uint32_t run = 0;
};

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("DPC_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (*end != '\0' || *v == '-') {
    throw ValidationError(std::string("DPC_SEED must be a non-negative integer, got '") +
                          v + "'");
  }
  return s;
}

// Everything a command needs: the resolved scenario and effective settings.
struct Context {
  Options opt;
  Scenario scenario;
  double tol = kDefaultTol;
  bool strict = false;

  const ScenarioConfig& cfg() const { return scenario.config; }
  bool full() const { return cfg().observer == ObserverKind::kFull; }

  const AdjacencySpec& adjacency() const {
    if (!cfg().adjacency) {
      throw ValidationError("this command needs an adjacency section in the config");
    }
    return *cfg().adjacency;
  }

  Json summary(const std::string& command) const {
    Json j;
    j["command"] = command;
    j["config"] = scenario.echo;
    return j;
  }

  void table(const std::string& stem, const std::string& csv,
             const Json& rows) const {
    if (opt.out_dir.empty()) return;
    if (opt.format == "json") {
      write_file(opt.out_dir, stem + ".json", rows.dump(2) + "\n");
    } else {
      write_file(opt.out_dir, stem + ".csv", csv);
    }
  }

  void file(const std::string& name, const std::string& content) const {
    if (!opt.out_dir.empty()) write_file(opt.out_dir, name, content);
  }
};

ConditionReport conditions(const Context& ctx) {
  const ScenarioConfig& cfg = ctx.cfg();
  return ctx.full() ? check_full_conditions(cfg.plant, cfg.L, cfg.gains,
                                            cfg.graph, cfg.noise)
                    : check_reduced_conditions(cfg.reduced, cfg.gains,
                                               cfg.graph, cfg.noise);
}

// The theoretical rate, or null when some noisy agent is not exponential.
Json rate_json(const ConditionReport& report, const ScenarioConfig& cfg) {
  try {
    return theoretical_ms_rate(report, cfg.noise);
  } catch (const ValidationError&) {
    return nullptr;
  }
}

int cmd_check(const Context& ctx, Json& s) {
  const ConditionReport report = conditions(ctx);
  const GraphSpectrum spec = spectrum(ctx.cfg().graph);
  s["spectrum"] = {{"fiedler", spec.fiedler},
                   {"lambda_max", spec.lambda_max},
                   {"eigenvalues", spec.eigenvalues}};
  s["conditions"] = to_json(report);
  s["theoretical_rate"] = rate_json(report, ctx.cfg());
  return report.pass ? 0 : 3;
}

int cmd_moduli(const Context& ctx, Json& s) {
  const ScenarioConfig& cfg = ctx.cfg();
  const std::vector<int> d = degrees(cfg.graph);
  s["degrees"] = d;
  if (ctx.full()) {
    s["L_norm"] = induced_one_norm(cfg.L);
    s["l"] = full_moduli(cfg.plant, cfg.L, cfg.gains, d);
  } else {
    const ReducedModuli m = reduced_moduli(cfg.reduced, cfg.gains, d);
    s["v"] = m.v;
    s["w"] = m.w;
  }
  return 0;
}

int cmd_epsilon(const Context& ctx, Json& s) {
  const ScenarioConfig& cfg = ctx.cfg();
  const AdjacencySpec& adj = ctx.adjacency();
  const std::vector<int> d = degrees(cfg.graph);
  EpsilonReport series, closed;
  if (ctx.full()) {
    const std::vector<double> l = full_moduli(cfg.plant, cfg.L, cfg.gains, d);
    const double Ln = induced_one_norm(cfg.L);
    series = epsilon_series_full(l, Ln, adj, cfg.noise, ctx.tol);
    closed = epsilon_closed_full(l, Ln, adj, cfg.noise, ctx.strict, ctx.tol);
    s["moduli"] = {{"l", l}, {"L_norm", Ln}};
  } else {
    const ReducedModuli m = reduced_moduli(cfg.reduced, cfg.gains, d);
    series = epsilon_series_reduced(m, adj, cfg.noise, ctx.tol);
    closed = epsilon_closed_reduced(m, adj, cfg.noise, ctx.strict, ctx.tol);
    s["moduli"] = {{"v", m.v}, {"w", m.w}};
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < series.per_agent.size(); ++i) {
    const double ref = std::max(std::fabs(closed.per_agent[i]), 1e-300);
    worst = std::max(worst, std::fabs(series.per_agent[i] - closed.per_agent[i]) / ref);
  }
  s["series"] = to_json(series);
  s["closed_form"] = to_json(closed);
  s["max_relative_difference"] = worst;
  if (ctx.full() && std::get_if<Geometric>(&adj.h) != nullptr && adj.k0 == 0) {
    try {
      s["simplified_bound"] = to_json(simplified_bound_report(
          full_moduli(cfg.plant, cfg.L, cfg.gains, d), induced_one_norm(cfg.L),
          adj, cfg.noise));
    } catch (const Error& e) {
      s["simplified_bound"] = {{"error", e.what()}};
    }
  }
  s["epsilon"] = series.epsilon;
  return 0;
}

int cmd_design(const Context& ctx, Json& s) {
  const ScenarioConfig& cfg = ctx.cfg();
  const AdjacencySpec& adj = ctx.adjacency();
  const std::optional<double> eps =
      ctx.opt.eps_star ? ctx.opt.eps_star : ctx.scenario.privacy.eps_star;
  if (!eps) throw ValidationError("design needs --eps-star or privacy.eps_star");
  const auto* geo = std::get_if<Geometric>(&adj.h);
  if (geo == nullptr) throw ValidationError("design needs a geometric deviation (alpha)");
  if (adj.k0 != 0) throw ValidationError("design assumes the deviation starts at k0 = 0");
  const std::vector<int> d = degrees(cfg.graph);
  std::vector<double> l, v, w;
  double Ln = 0.0;
  if (ctx.full()) {
    l = full_moduli(cfg.plant, cfg.L, cfg.gains, d);
    Ln = induced_one_norm(cfg.L);
  } else {
    const ReducedModuli m = reduced_moduli(cfg.reduced, cfg.gains, d);
    v = m.v;
    w = m.w;
  }
  s["eps_star"] = *eps;
  Json rows = Json::array();
  bool feasible = true;
  for (int i = 0; i < cfg.agents(); ++i) {
    const double c = cfg.noise[i].c;
    Json row;
    row["agent"] = i;
    try {
      const DesignResult r =
          ctx.full() ? design_g_full(*eps, adj.m, geo->alpha, l[i], c, Ln, ctx.strict)
                     : design_g_reduced(*eps, adj.m, geo->alpha, v[i], w[i], c,
                                        ctx.strict);
      row["feasible"] = true;
      row["g"] = r.g;
      row["any_g"] = r.any_g;
      row["lower"] = r.lower;
      row["margin"] = r.margin;
      if (!r.any_g) {
        row["epsilon_at_g"] =
            ctx.full() ? epsilon_closed_exp_full(l[i], Ln, adj.m, geo->alpha, c, r.g)
                       : epsilon_closed_exp_reduced(v[i], w[i], adj.m, geo->alpha,
                                                    c, r.g);
      }
    } catch (const InfeasibleError& e) {
      feasible = false;
      row["feasible"] = false;
      row["margin"] = e.margin();
      row["reason"] = e.what();
    }
    rows.push_back(row);
  }
  s["design"] = rows;
  s["feasible"] = feasible;
  return feasible ? 0 : 3;
}

LedgerResult ledger(const Context& ctx, long horizon) {
  const ScenarioConfig& cfg = ctx.cfg();
  return ctx.full() ? privacy_ledger_full(cfg.plant, cfg.L, cfg.gains, cfg.graph,
                                          ctx.adjacency(), cfg.noise, horizon,
                                          ctx.tol)
                    : privacy_ledger_reduced(cfg.reduced, cfg.gains, cfg.graph,
                                             ctx.adjacency(), cfg.noise, horizon,
                                             ctx.tol);
}

int cmd_audit(const Context& ctx, Json& s) {
  const LedgerResult r = ledger(ctx, ctx.cfg().horizon);
  s["ledger"] = to_json(r);
  s["partial"] = r.partial;
  return 0;
}

int cmd_simulate(const Context& ctx, Json& s) {
  const SimTrace tr = simulate(ctx.cfg(), ctx.opt.run);
  s["run"] = ctx.opt.run;
  s["steps"] = tr.steps();
  s["overflow"] = tr.overflow;
  s["norm_delta"] = {{"first", tr.norm_delta.front()}, {"last", tr.norm_delta.back()}};
  s["norm_e"] = {{"first", tr.norm_e.front()}, {"last", tr.norm_e.back()}};
  ctx.table("trace", trace_csv(tr), trace_json(tr));
  ctx.table("norms", norms_csv(tr), norms_json(tr));
  ctx.file("norms.svg",
           line_plot_svg("disagreement and estimation error",
                         {{"||delta(k)||", tr.norm_delta}, {"||e(k)||", tr.norm_e}},
                         true));
  return 0;
}

int cmd_montecarlo(const Context& ctx, Json& s) {
  const ScenarioConfig& cfg = ctx.cfg();
  const int runs = ctx.opt.runs.value_or(ctx.scenario.runs);
  const MsEstimate ms = monte_carlo(cfg, runs, ctx.opt.threads);
  const long k_lo = ctx.opt.k_lo.value_or(cfg.horizon / 2);
  const long k_hi = ctx.opt.k_hi.value_or(cfg.horizon);
  s["runs"] = runs;
  s["window"] = {k_lo, k_hi};
  try {
    s["empirical_rate"] = empirical_rate(ms, k_lo, k_hi);
  } catch (const ValidationError& e) {
    s["empirical_rate"] = nullptr;
    s["rate_error"] = e.what();
  }
  const ConditionReport report = conditions(ctx);
  s["conditions"] = to_json(report);
  s["theoretical_rate"] = rate_json(report, cfg);
  s["mean_delta_sq"] = {{"first", ms.mean_delta_sq.front()},
                        {"last", ms.mean_delta_sq.back()}};
  ctx.table("ms", ms_csv(ms), ms_json(ms));
  ctx.file("ms.svg", line_plot_svg("mean-square disagreement and error",
                                   {{"E||delta(k)||^2", ms.mean_delta_sq},
                                    {"E||e(k)||^2", ms.mean_e_sq}},
                                   true));
  return 0;
}

int cmd_histogram(const Context& ctx, Json& s) {
  const long k = ctx.opt.k_star >= 0 ? ctx.opt.k_star : (ctx.full() ? 2 : 4);
  const int runs = ctx.opt.runs.value_or(1000);
  const HistogramResult h =
      histogram_experiment(ctx.cfg(), runs, k, ctx.opt.component, ctx.opt.threads);
  s["k_star"] = k;
  s["runs"] = runs;
  s["component"] = ctx.opt.component;
  s["bins"] = h.counts.size();
  s["bins_used"] = h.bins_used;
  s["max_ratio"] = h.max_ratio;
  s["eps_to_k"] = h.eps_to_k;
  s["bound"] = h.bound;
  s["pass"] = h.pass;
  ctx.table("histogram", histogram_csv(h), histogram_json(h));
  ctx.file("histogram.svg",
           histogram_svg("message histograms at k = " + std::to_string(k), h));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Differentially private consensus with observers"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides config)");
  auto* tol_opt = app.add_option("--tol", tol, "series truncation tolerance")
                      ->check(CLI::PositiveNumber);
  app.add_option("--config", opt.config, "scenario JSON")->required();
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_flag("--strict-paper", opt.strict_paper,
               "require alpha < l (resp. v) in the closed forms and design");
  app.add_option("--format", opt.format, "table format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", opt.threads, "worker threads (0 = all cores)");

  using Command = int (*)(const Context&, Json&);
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const char* name, const char* help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help)->fallthrough();
    commands.emplace_back(sub, fn);
    return sub;
  };
  add("check", "stability conditions and theoretical rate", cmd_check);
  add("moduli", "per-agent contraction moduli", cmd_moduli);
  add("epsilon", "privacy budget: series, closed form, bound", cmd_epsilon);
  add("design", "noise decay g per agent for a target epsilon", cmd_design)
      ->add_option("--eps-star", opt.eps_star, "target epsilon")
      ->check(CLI::PositiveNumber);
  add("audit", "deterministic privacy ledger", cmd_audit);
  add("simulate", "one closed-loop run", cmd_simulate)
      ->add_option("--run", opt.run, "run index selecting the noise substreams");
  CLI::App* mc = add("montecarlo", "mean-square statistics and rate fit", cmd_montecarlo);
  mc->add_option("--runs", opt.runs, "number of runs");
  mc->add_option("--k-lo", opt.k_lo, "rate window start");
  mc->add_option("--k-hi", opt.k_hi, "rate window end");
  CLI::App* hist = add("histogram", "paired message histograms", cmd_histogram);
  hist->add_option("--k", opt.k_star, "step k_star");
  hist->add_option("--runs", opt.runs, "number of paired runs");
  hist->add_option("--component", opt.component, "message component");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::kValidation);
  }
  if (*seed_opt) opt.seed = seed;
  if (*tol_opt) opt.tol = tol;

  try {
    Context ctx;
    ctx.opt = opt;
    ctx.scenario = load_scenario(opt.config, {opt.seed, env_seed()});
    ctx.tol = opt.tol.value_or(ctx.scenario.privacy.tol);
    ctx.strict = opt.strict_paper || ctx.scenario.privacy.strict_paper;
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      Json s = ctx.summary(sub->get_name());
      const int rc = fn(ctx, s);
      const std::string text = s.dump(2) + "\n";
      out << text;
      ctx.file("summary.json", text);
      if (rc != 0) err << "error: " << sub->get_name() << " found an infeasible scenario\n";
      return rc;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kNumeric);
  }
  return static_cast<int>(ErrorKind::kValidation);
}

}  // namespace dpc
