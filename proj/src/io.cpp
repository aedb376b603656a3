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
#include "dpc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dpc/error.hpp"

namespace dpc {
namespace {

// A JSON value together with its pointer, so every schema error can say
// where it happened.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const Json& json() const { return j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError((path_.empty() ? "/" : path_) + ": " + msg);
  }

  bool has(const std::string& key) const {
    return j_.is_object() && j_.contains(key);
  }

  Node at(const std::string& key) const {
    require_object();
    if (!j_.contains(key)) {
      throw ValidationError(path_ + "/" + key + ": required key is missing");
    }
    return Node(j_.at(key), path_ + "/" + key);
  }

  std::optional<Node> child(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  Node operator[](std::size_t i) const {
    return Node(j_.at(i), path_ + "/" + std::to_string(i));
  }

  void require_object() const {
    if (!j_.is_object()) fail("expected an object");
  }

  void allow_keys(std::initializer_list<const char*> keys) const {
    require_object();
    for (const auto& item : j_.items()) {
      if (std::none_of(keys.begin(), keys.end(),
                       [&](const char* k) { return item.key() == k; })) {
        throw ValidationError(path_ + "/" + item.key() + ": unknown key");
      }
    }
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }

  long integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<long>();
  }

  std::uint64_t unsigned_integer() const {
    if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<long>() >= 0)) {
      fail("expected a non-negative integer");
    }
    return j_.get<std::uint64_t>();
  }

  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }

  std::string text() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  std::vector<double> numbers() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i].number();
    return out;
  }

  std::vector<int> integers() const {
    std::vector<int> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = static_cast<int>((*this)[i].integer());
    }
    return out;
  }

  Vector vector() const {
    const std::vector<double> v = numbers();
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  // Row-major nested arrays; every row must have the same length.
  Matrix matrix() const {
    const std::size_t rows = size();
    if (rows == 0) fail("expected a non-empty matrix");
    const std::size_t cols = (*this)[0].size();
    if (cols == 0) fail("expected a non-empty matrix");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const Node row = (*this)[i];
      if (row.size() != cols) {
        row.fail("row has " + std::to_string(row.size()) + " entries, expected " +
                 std::to_string(cols));
      }
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j].number();
    }
    return m;
  }

  // [lo, hi] with lo <= hi, or a single number (lo = hi).
  std::pair<double, double> interval() const {
    if (j_.is_number()) return {number(), number()};
    if (size() != 2) fail("expected a number or an interval [lo, hi]");
    const double lo = (*this)[0].number();
    const double hi = (*this)[1].number();
    if (!(lo <= hi)) fail("interval needs lo <= hi");
    return {lo, hi};
  }

 private:
  const Json& j_;
  std::string path_;
};

// Runs `f`, prefixing any ValidationError with the node's pointer.
template <typename F>
auto at_path(const Node& node, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    node.fail(e.what());
  }
}

TopologySpec parse_graph(const Node& node) {
  node.allow_keys({"kind", "N", "offsets", "edges", "adjacency"});
  TopologySpec spec;
  spec.kind = at_path(node.at("kind"), [&] {
    return topology_kind_from_string(node.at("kind").text());
  });
  if (auto n = node.child("N")) spec.node_count = static_cast<int>(n->integer());
  if (auto o = node.child("offsets")) spec.offsets = o->integers();
  if (auto e = node.child("edges")) {
    for (std::size_t i = 0; i < e->size(); ++i) {
      const Node pair = (*e)[i];
      if (pair.size() != 2) pair.fail("edge must be a pair [i, j]");
      spec.edges.emplace_back(static_cast<int>(pair[0].integer()),
                              static_cast<int>(pair[1].integer()));
    }
  }
  if (auto a = node.child("adjacency")) {
    spec.adjacency = a->matrix();
    if (!node.has("N")) spec.node_count = static_cast<int>(spec.adjacency.rows());
  }
  return spec;
}

NoiseSchedule parse_schedule(const Node& node, double c, double g) {
  NoiseSchedule s;
  s.c = c;
  const std::string kind = node.has("kind") ? node.at("kind").text() : "exponential";
  if (kind == "exponential") {
    s.kind = Exponential{g};
  } else if (kind == "polynomial") {
    s.kind = Polynomial{node.has("power") ? static_cast<int>(node.at("power").integer()) : 2};
  } else if (kind == "custom") {
    s.kind = Custom{node.at("p").numbers()};
  } else {
    node.at("kind").fail("unknown schedule kind '" + kind +
                         "' (exponential, polynomial, custom)");
  }
  at_path(node, [&] { s.validate(); });
  return s;
}

// Uniform draw in [lo, hi]; the stream is consumed even for a point interval
// so adding randomness to one parameter never shifts another.
double draw(CounterRng& rng, std::pair<double, double> range) {
  const double u = rng.uniform_open();
  return range.first + (range.second - range.first) * u;
}

std::vector<NoiseSchedule> parse_noise(const Node& node, int N,
                                       const RngSpec& rng) {
  std::vector<NoiseSchedule> out;
  if (auto agents = node.child("agents")) {
    node.allow_keys({"agents"});
    if (agents->size() != static_cast<std::size_t>(N)) {
      agents->fail("expected " + std::to_string(N) + " schedules, got " +
                   std::to_string(agents->size()));
    }
    for (int i = 0; i < N; ++i) {
      const Node a = (*agents)[i];
      a.allow_keys({"c", "kind", "g", "power", "p"});
      const double c = a.at("c").number();
      const double g = a.has("g") ? a.at("g").number() : 0.9;
      out.push_back(parse_schedule(a, c, g));
    }
    return out;
  }
  node.allow_keys({"c", "kind", "g", "power", "p"});
  const auto c_range = node.at("c").interval();
  const auto g_range = node.has("g") ? node.at("g").interval()
                                     : std::pair<double, double>{0.9, 0.9};
  for (int i = 0; i < N; ++i) {
    CounterRng gen(rng, {0, static_cast<std::uint32_t>(i), 0,
                         StreamPurpose::kParameters});
    const double c = draw(gen, c_range);
    const double g = draw(gen, g_range);
    out.push_back(parse_schedule(node, c, g));
  }
  return out;
}

AdjacencySpec parse_adjacency(const Node& node) {
  node.allow_keys({"i0", "k0", "m", "alpha", "h", "direction"});
  AdjacencySpec adj;
  adj.i0 = static_cast<int>(node.at("i0").integer());
  if (auto k0 = node.child("k0")) adj.k0 = k0->integer();
  adj.m = node.at("m").number();
  if (node.has("alpha") && node.has("h")) node.fail("give either alpha or h");
  if (auto h = node.child("h")) {
    adj.h = CustomDeviation{h->numbers()};
  } else {
    adj.h = Geometric{node.at("alpha").number()};
  }
  if (auto d = node.child("direction")) adj.direction = d->vector();
  return adj;
}

std::vector<Vector> parse_states(const Node& node, int N, int dim,
                                 const RngSpec& rng) {
  if (node.json().is_object()) {
    node.allow_keys({"box"});
    const auto box = node.at("box").interval();
    return draw_box(rng, N, dim, box.first, box.second);
  }
  if (node.size() != static_cast<std::size_t>(N)) {
    node.fail("expected " + std::to_string(N) + " states, got " +
              std::to_string(node.size()));
  }
  std::vector<Vector> out;
  for (int i = 0; i < N; ++i) {
    const Node s = node[i];
    if (s.size() != static_cast<std::size_t>(dim)) {
      s.fail("state has " + std::to_string(s.size()) + " entries, expected " +
             std::to_string(dim));
    }
    out.push_back(s.vector());
  }
  return out;
}

Json graph_echo(const TopologySpec& spec, const Graph& graph) {
  Json j;
  j["kind"] = to_string(spec.kind);
  j["N"] = spec.node_count;
  if (spec.kind == TopologyKind::kCirculant) j["offsets"] = spec.offsets;
  if (spec.kind == TopologyKind::kExplicit) {
    Json edges = Json::array();
    for (const auto& [a, b] : graph.edges()) edges.push_back({a, b});
    j["edges"] = edges;
  }
  return j;
}

Json schedule_echo(const NoiseSchedule& s) {
  Json j;
  j["c"] = s.c;
  if (const auto* e = std::get_if<Exponential>(&s.kind)) {
    j["kind"] = "exponential";
    j["g"] = e->g;
  } else if (const auto* p = std::get_if<Polynomial>(&s.kind)) {
    j["kind"] = "polynomial";
    j["power"] = p->power;
  } else {
    j["kind"] = "custom";
    j["p"] = std::get<Custom>(s.kind).p;
  }
  return j;
}

Json states_echo(const std::vector<Vector>& states) {
  Json j = Json::array();
  for (const Vector& v : states) {
    j.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  return j;
}

Json build_echo(const Scenario& s) {
  const ScenarioConfig& cfg = s.config;
  Json j;
  j["graph"] = graph_echo(s.topology, cfg.graph);
  j["plant"] = {{"A", to_json(cfg.plant.A)},
                {"B", to_json(cfg.plant.B)},
                {"C", to_json(cfg.plant.C)}};
  Json obs;
  obs["kind"] = to_string(cfg.observer);
  if (cfg.observer == ObserverKind::kFull) {
    obs["L"] = to_json(cfg.L);
  } else {
    obs["P"] = to_json(cfg.reduced.P);
    obs["Lbar"] = to_json(cfg.reduced.Lbar);
  }
  j["observer"] = obs;
  j["gains"] = {{"K", to_json(cfg.gains.K)}};
  Json agents = Json::array();
  for (const auto& ns : cfg.noise) agents.push_back(schedule_echo(ns));
  j["noise"] = {{"agents", agents}};
  if (cfg.adjacency) {
    const AdjacencySpec& adj = *cfg.adjacency;
    Json a;
    a["i0"] = adj.i0;
    a["k0"] = adj.k0;
    a["m"] = adj.m;
    if (const auto* g = std::get_if<Geometric>(&adj.h)) {
      a["alpha"] = g->alpha;
    } else {
      a["h"] = std::get<CustomDeviation>(adj.h).h;
    }
    if (adj.direction.size() > 0) {
      a["direction"] = std::vector<double>(
          adj.direction.data(), adj.direction.data() + adj.direction.size());
    }
    j["adjacency"] = a;
  }
  j["sim"] = {{"H", cfg.horizon},
              {"R", s.runs},
              {"seed", cfg.rng.master_seed},
              {"x0", states_echo(cfg.x0)},
              {"xhat0", states_echo(cfg.xhat0)}};
  Json p;
  if (s.privacy.eps_star) p["eps_star"] = *s.privacy.eps_star;
  p["tol"] = s.privacy.tol;
  p["strict_paper"] = s.privacy.strict_paper;
  j["privacy"] = p;
  return j;
}

void csv_cell(std::string& out, double v) {
  out += ',';
  out += format_double(v);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Scenario parse_scenario(const Json& doc, const SeedSources& seeds) {
  const Node root(doc, "");
  root.allow_keys({"graph", "plant", "observer", "gains", "noise", "adjacency",
                   "sim", "privacy"});
  Scenario s;
  ScenarioConfig& cfg = s.config;

  const Node graph = root.at("graph");
  s.topology = parse_graph(graph);
  cfg.graph = at_path(graph, [&] { return make_topology(s.topology); });
  const int N = cfg.graph.node_count();

  const Node plant = root.at("plant");
  plant.allow_keys({"A", "B", "C"});
  cfg.plant.A = plant.at("A").matrix();
  cfg.plant.B = plant.at("B").matrix();
  cfg.plant.C = plant.at("C").matrix();
  at_path(plant, [&] { cfg.plant.validate(); });
  const int n = cfg.plant.n();
  const int q = cfg.plant.q();

  const Node obs = root.at("observer");
  obs.allow_keys({"kind", "L", "P", "Lbar"});
  const std::string kind = obs.at("kind").text();
  if (kind == "full") {
    cfg.observer = ObserverKind::kFull;
    cfg.L = obs.at("L").matrix();
  } else if (kind == "reduced") {
    cfg.observer = ObserverKind::kReduced;
    cfg.reduced = at_path(obs, [&] {
      return obs.has("P") ? canonicalize_output(cfg.plant, obs.at("P").matrix())
                          : canonicalize_output(cfg.plant);
    });
    cfg.reduced.Lbar = obs.at("Lbar").matrix();
  } else {
    obs.at("kind").fail("unknown observer kind '" + kind + "' (full, reduced)");
  }

  const Node gains = root.at("gains");
  gains.allow_keys({"K"});
  cfg.gains.K = gains.at("K").matrix();

  const std::optional<Node> sim = root.child("sim");
  if (sim) sim->allow_keys({"H", "R", "seed", "x0", "xhat0"});
  if (seeds.cli) {
    cfg.rng.master_seed = *seeds.cli;
  } else if (sim && sim->has("seed")) {
    cfg.rng.master_seed = sim->at("seed").unsigned_integer();
  } else if (seeds.env) {
    cfg.rng.master_seed = *seeds.env;
  }
  if (sim && sim->has("H")) cfg.horizon = sim->at("H").integer();
  if (sim && sim->has("R")) s.runs = static_cast<int>(sim->at("R").integer());

  cfg.noise = parse_noise(root.at("noise"), N, cfg.rng);
  if (auto adj = root.child("adjacency")) {
    cfg.adjacency = parse_adjacency(*adj);
    at_path(*adj, [&] { cfg.adjacency->validate(N, q); });
  }

  const int est_dim = cfg.observer == ObserverKind::kFull ? n : n - q;
  if (sim && sim->has("x0")) {
    cfg.x0 = parse_states(sim->at("x0"), N, n, cfg.rng);
  } else {
    cfg.x0 = draw_box(cfg.rng, N, n, -5.0, 5.0);
  }
  if (sim && sim->has("xhat0")) {
    // Box draws for estimates would reuse the initial-state streams.
    if (sim->at("xhat0").json().is_object()) {
      sim->at("xhat0").fail("expected explicit estimates");
    }
    cfg.xhat0 = parse_states(sim->at("xhat0"), N, est_dim, cfg.rng);
  } else {
    cfg.xhat0.assign(N, Vector::Zero(est_dim));
  }

  if (auto p = root.child("privacy")) {
    p->allow_keys({"eps_star", "tol", "strict_paper"});
    if (p->has("eps_star")) s.privacy.eps_star = p->at("eps_star").number();
    if (p->has("tol")) s.privacy.tol = p->at("tol").number();
    if (p->has("strict_paper")) s.privacy.strict_paper = p->at("strict_paper").boolean();
  }
  if (!(s.privacy.tol > 0.0)) throw ValidationError("/privacy/tol: must be > 0");
  if (s.runs < 2) throw ValidationError("/sim/R: need at least 2 runs");

  cfg.validate();
  s.echo = build_echo(s);
  return s;
}

Scenario load_scenario(const std::string& path, const SeedSources& seeds) {
  const std::string text = read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return parse_scenario(doc, seeds);
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const std::vector<double>& v) { return Json(v); }

Json to_json(const ConditionReport& report) {
  Json j;
  j["rho_observer"] = report.rho_observer;
  j["rho_consensus"] = report.rho_consensus;
  Json flags = Json::array();
  for (bool b : report.summable_noise) flags.push_back(b);
  j["summable_noise"] = flags;
  j["pass"] = report.pass;
  return j;
}

Json to_json(const EpsilonReport& report) {
  Json j;
  j["method"] = to_string(report.method);
  j["epsilon"] = report.epsilon;
  j["per_agent"] = report.per_agent;
  j["truncation_residual"] = report.truncation_residual;
  return j;
}

Json to_json(const LedgerResult& ledger) {
  Json j;
  j["horizon"] = static_cast<long>(ledger.partial.size()) - 1;
  j["horizon_sum"] = ledger.horizon_sum;
  j["tail_bound"] = ledger.tail_bound;
  j["S"] = ledger.S;
  j["eps_ref"] = ledger.eps_ref;
  j["eps_residual"] = ledger.eps_residual;
  j["holds"] = ledger.holds;
  return j;
}

std::string trace_csv(const SimTrace& trace) {
  std::string out = "k,agent,component,x,xhat,theta,eta,u\n";
  const int n = trace.state_dim;
  const int r = trace.input_dim;
  const int width = std::max(n, r);
  for (long k = 0; k < trace.steps(); ++k) {
    const Vector x = trace.absolute(trace.x, k);
    const Vector xhat = trace.absolute(trace.xhat, k);
    const Vector theta = trace.absolute(trace.theta, k);
    for (int i = 0; i < trace.agents; ++i) {
      for (int c = 0; c < width; ++c) {
        out += std::to_string(k) + ',' + std::to_string(i) + ',' +
               std::to_string(c);
        if (c < n) {
          const int at = i * n + c;
          csv_cell(out, x(at));
          csv_cell(out, xhat(at));
          csv_cell(out, theta(at));
          csv_cell(out, trace.eta[k](at));
        } else {
          out += ",,,,";
        }
        if (c < r) {
          csv_cell(out, trace.u[k](i * r + c));
        } else {
          out += ',';
        }
        out += '\n';
      }
    }
  }
  return out;
}

std::string norms_csv(const SimTrace& trace) {
  std::string out = "k,norm_delta,norm_e\n";
  for (long k = 0; k < trace.steps(); ++k) {
    out += std::to_string(k);
    csv_cell(out, trace.norm_delta[k]);
    csv_cell(out, trace.norm_e[k]);
    out += '\n';
  }
  return out;
}

std::string ms_csv(const MsEstimate& ms) {
  std::string out = "k,mean_delta_sq,ci_delta,mean_e_sq,ci_e\n";
  for (std::size_t k = 0; k < ms.mean_delta_sq.size(); ++k) {
    out += std::to_string(k);
    csv_cell(out, ms.mean_delta_sq[k]);
    csv_cell(out, ms.ci_delta[k]);
    csv_cell(out, ms.mean_e_sq[k]);
    csv_cell(out, ms.ci_e[k]);
    out += '\n';
  }
  return out;
}

std::string histogram_csv(const HistogramResult& h) {
  std::string out = "bin,lo,hi,count,count_adjacent\n";
  for (std::size_t j = 0; j < h.counts.size(); ++j) {
    out += std::to_string(j);
    csv_cell(out, h.edges[j]);
    csv_cell(out, h.edges[j + 1]);
    out += ',' + std::to_string(h.counts[j]) + ',' +
           std::to_string(h.counts_adjacent[j]) + '\n';
  }
  return out;
}

Json trace_json(const SimTrace& trace) {
  Json rows = Json::array();
  const int n = trace.state_dim;
  const int r = trace.input_dim;
  for (long k = 0; k < trace.steps(); ++k) {
    const Vector x = trace.absolute(trace.x, k);
    const Vector xhat = trace.absolute(trace.xhat, k);
    const Vector theta = trace.absolute(trace.theta, k);
    for (int i = 0; i < trace.agents; ++i) {
      for (int c = 0; c < std::max(n, r); ++c) {
        Json row;
        row["k"] = k;
        row["agent"] = i;
        row["component"] = c;
        if (c < n) {
          row["x"] = x(i * n + c);
          row["xhat"] = xhat(i * n + c);
          row["theta"] = theta(i * n + c);
          row["eta"] = trace.eta[k](i * n + c);
        }
        if (c < r) row["u"] = trace.u[k](i * r + c);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

Json norms_json(const SimTrace& trace) {
  Json rows = Json::array();
  for (long k = 0; k < trace.steps(); ++k) {
    rows.push_back({{"k", k},
                    {"norm_delta", trace.norm_delta[k]},
                    {"norm_e", trace.norm_e[k]}});
  }
  return rows;
}

Json ms_json(const MsEstimate& ms) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < ms.mean_delta_sq.size(); ++k) {
    rows.push_back({{"k", k},
                    {"mean_delta_sq", ms.mean_delta_sq[k]},
                    {"ci_delta", ms.ci_delta[k]},
                    {"mean_e_sq", ms.mean_e_sq[k]},
                    {"ci_e", ms.ci_e[k]}});
  }
  return rows;
}

Json histogram_json(const HistogramResult& h) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < h.counts.size(); ++j) {
    rows.push_back({{"bin", j},
                    {"lo", h.edges[j]},
                    {"hi", h.edges[j + 1]},
                    {"count", h.counts[j]},
                    {"count_adjacent", h.counts_adjacent[j]}});
  }
  return rows;
}

MsEstimate parse_ms_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "k,mean_delta_sq,ci_delta,mean_e_sq,ci_e") {
    throw ValidationError("ms.csv: unexpected header");
  }
  MsEstimate ms;
  long expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    if (cells.size() != 5) {
      throw ValidationError("ms.csv row " + std::to_string(expected) +
                            ": expected 5 fields, got " +
                            std::to_string(cells.size()));
    }
    if (std::stol(cells[0]) != expected) {
      throw ValidationError("ms.csv: steps must be consecutive from 0");
    }
    double v[4];
    for (int c = 0; c < 4; ++c) {
      char* end = nullptr;
      v[c] = std::strtod(cells[c + 1].c_str(), &end);
      if (end == cells[c + 1].c_str() || *end != '\0') {
        throw ValidationError("ms.csv row " + std::to_string(expected) +
                              ": bad number '" + cells[c + 1] + "'");
      }
    }
    ms.mean_delta_sq.push_back(v[0]);
    ms.ci_delta.push_back(v[1]);
    ms.mean_e_sq.push_back(v[2]);
    ms.ci_e.push_back(v[3]);
    ++expected;
  }
  return ms;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw NumericError("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw NumericError("cannot write " + path.string());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace dpc
