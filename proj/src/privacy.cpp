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
#include "dpc/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "dpc/error.hpp"

namespace dpc {
namespace {

constexpr long kMaxSeriesTerms = 50'000'000;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Compensated running sum.
class KahanSum {
 public:
  void add(double v) {
    const double y = v - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void require_privacy_schedule(const NoiseSchedule& s) {
  s.validate();
  if (!(s.c > 0.0)) {
    throw ValidationError("privacy budget needs a positive noise scale c");
  }
  if (std::holds_alternative<Custom>(s.kind)) {
    throw ValidationError(
        "privacy budget needs an exponential or polynomial schedule; the tail "
        "of a custom schedule cannot be bounded");
  }
}

// log(1 / p(k))
double log_inv_p(const NoiseSchedule& s, long k) {
  if (const auto* e = std::get_if<Exponential>(&s.kind)) {
    return -static_cast<double>(k) * std::log(e->g);
  }
  return std::get<Polynomial>(s.kind).power *
         std::log(static_cast<double>(k + 1));
}

// Geometric ratio z with 1/p(K + j) <= (1/p(K)) z^j for all j >= 1.
double envelope_ratio(const NoiseSchedule& s, long K) {
  if (const auto* e = std::get_if<Exponential>(&s.kind)) return 1.0 / e->g;
  return std::exp(std::get<Polynomial>(s.kind).power /
                  static_cast<double>(K + 1));
}

double log_h(const AdjacencySpec& adj, long k) {
  const long j = k - adj.k0;
  if (j < 0) return -std::numeric_limits<double>::infinity();
  if (const auto* g = std::get_if<Geometric>(&adj.h)) {
    return static_cast<double>(j) * std::log(g->alpha);
  }
  const double h = deviation_at(adj.h, j);
  return h > 0.0 ? std::log(h) : -std::numeric_limits<double>::infinity();
}

// Last step at which h(k - k0) can be nonzero, or -1 for an unbounded
// geometric deviation.
long deviation_end(const AdjacencySpec& adj) {
  if (const auto* c = std::get_if<CustomDeviation>(&adj.h)) {
    return adj.k0 + static_cast<long>(c->h.size()) - 1;
  }
  return -1;
}

// Decay rate of h used by the tail bound once the bound applies.
double tail_alpha(const AdjacencySpec& adj) {
  if (const auto* g = std::get_if<Geometric>(&adj.h)) return g->alpha;
  return 0.0;
}

void require_convergent(double l, const AdjacencySpec& adj,
                        const NoiseSchedule& s, const char* modulus) {
  const double rho = std::max(l, tail_alpha(adj));
  if (const auto* e = std::get_if<Exponential>(&s.kind)) {
    if (!(rho < e->g)) {
      throw InfeasibleError(
          std::string("privacy series diverges: max(") + modulus +
              ", alpha) / g = " + num(rho / e->g) + " >= 1 (" + modulus +
              " = " + num(l) + ", alpha = " + num(tail_alpha(adj)) +
              ", g = " + num(e->g) + ")",
          rho - e->g);
    }
  } else if (!(rho < 1.0)) {
    throw InfeasibleError(std::string("privacy series diverges: ") + modulus +
                              " = " + num(l) + " must be below 1",
                          rho - 1.0);
  }
}

// Sums  (s(k) + direct * h_s(k)) / b(k)  over k >= start (include_start) or
// k > start, where s(k+1) = l s(k) + gamma h_s(k) and s(start) = s_start,
// until a rigorous bound on the remainder drops to `tol`. s(k) / p(k) and
// h_s(k) / p(k) are tracked directly so neither factor overflows.
TruncatedValue majorant_sum(double l, double gamma, double direct,
                            double s_start, long start, bool include_start,
                            const AdjacencySpec& adj, const NoiseSchedule& s,
                            double tol) {
  TruncatedValue out;
  const bool no_input = adj.m == 0.0 || (gamma == 0.0 && direct == 0.0);
  if (s_start == 0.0 && no_input) return out;

  const double alpha = tail_alpha(adj);
  const long end = deviation_end(adj);
  const long valid_from = std::max(adj.k0, end);
  double u = s_start > 0.0 ? std::exp(std::log(s_start) + log_inv_p(s, start))
                           : 0.0;
  KahanSum sum;
  for (long k = start;; ++k) {
    if (k - start > kMaxSeriesTerms) {
      throw NumericError("privacy series did not reach tolerance " + num(tol) +
                         " within " + std::to_string(kMaxSeriesTerms) +
                         " terms");
    }
    const double lip = log_inv_p(s, k);
    const double hp = std::exp(log_h(adj, k) + lip);
    if (k > start || include_start) sum.add((u + direct * hp) / s.c);

    if (k >= valid_from) {
      const double z = envelope_ratio(s, k);
      const double rho = std::max(l, alpha);
      if (l * z < 1.0 && rho * z < 1.0 && alpha * z < 1.0) {
        double tail = u * l * z / (1.0 - l * z);
        tail += gamma * hp * z / ((1.0 - rho * z) * (1.0 - rho * z));
        tail += direct * hp * alpha * z / (1.0 - alpha * z);
        tail /= s.c;
        if (tail <= tol) {
          out.value = sum.value();
          out.residual = tail;
          return out;
        }
      }
    }
    const double ratio = std::exp(log_inv_p(s, k + 1) - lip);
    u = ratio * (l * u + gamma * hp);
  }
}

double poly_bracket(double b, double l) {
  return (b + 2) * (b + 2) - (2 * b * b + 6 * b + 3) * l +
         (b + 1) * (b + 1) * l * l;
}

// coef_bracket * sum_b h(b) bracket(b, l) + coef_direct * sum_b h(b) (b+1)^2
TruncatedValue poly_sum(double l, double coef_bracket, double coef_direct,
                        const Deviation& h, double tol) {
  TruncatedValue out;
  KahanSum sum;
  if (const auto* c = std::get_if<CustomDeviation>(&h)) {
    for (std::size_t b = 0; b < c->h.size(); ++b) {
      const double bb = static_cast<double>(b);
      sum.add(c->h[b] * (coef_bracket * poly_bracket(bb, l) +
                         coef_direct * (bb + 1) * (bb + 1)));
    }
    out.value = sum.value();
    return out;
  }
  const double alpha = std::get<Geometric>(h).alpha;
  double hb = 1.0;
  for (long b = 0;; ++b) {
    if (b > kMaxSeriesTerms) {
      throw NumericError("polynomial budget sum did not converge");
    }
    const double bb = static_cast<double>(b);
    sum.add(hb * (coef_bracket * poly_bracket(bb, l) +
                  coef_direct * (bb + 1) * (bb + 1)));
    hb *= alpha;
    // For j > b: bracket(j) <= 2 (j+2)^2, and alpha^j (j+2)^2 shrinks by at
    // most r per step.
    const double r = alpha * ((bb + 4) / (bb + 3)) * ((bb + 4) / (bb + 3));
    if (r < 1.0) {
      const double lead = hb * (bb + 3) * (bb + 3);
      const double tail =
          (2.0 * std::fabs(coef_bracket) + std::fabs(coef_direct)) * lead /
          (1.0 - r);
      if (tail <= tol) {
        out.value = sum.value();
        out.residual = tail;
        return out;
      }
    }
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be positive, got " +
                          num(v));
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be >= 0, got " + num(v));
  }
}

void require_unit_open(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ValidationError(std::string(name) + " must lie in (0, 1), got " +
                          num(v));
  }
}

void require_exp_window(double modulus, double alpha, double g,
                        const char* name, bool strict) {
  if (!(g > std::max(modulus, alpha))) {
    throw InfeasibleError(std::string("closed form diverges: g = ") + num(g) +
                              " must exceed max(" + name + ", alpha) = " +
                              num(std::max(modulus, alpha)),
                          std::max(modulus, alpha) - g);
  }
  if (strict && !(alpha < modulus)) {
    throw InfeasibleError(std::string("strict mode requires alpha < ") + name +
                              " (alpha = " + num(alpha) + ", " + name + " = " +
                              num(modulus) + ")",
                          alpha - modulus);
  }
}

double geometric_alpha(const AdjacencySpec& adj, const char* what) {
  if (const auto* g = std::get_if<Geometric>(&adj.h)) return g->alpha;
  throw ValidationError(std::string(what) + " needs a geometric deviation");
}

EpsilonReport finish(EpsilonReport r) {
  r.epsilon = r.per_agent.empty()
                  ? 0.0
                  : *std::max_element(r.per_agent.begin(), r.per_agent.end());
  return r;
}

void require_agent_count(std::size_t moduli, std::size_t schedules) {
  if (moduli != schedules) {
    throw ValidationError("got " + std::to_string(moduli) + " moduli but " +
                          std::to_string(schedules) + " noise schedules");
  }
}

// Picks the root of a x^2 + b x + c = 0 inside (lo, 1).
double root_in_interval(double a, double b, double c, double lo) {
  std::vector<double> roots;
  const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
  if (std::fabs(a) <= 1e-14 * scale) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      if (q != 0.0) roots.push_back(c / q);
      roots.push_back(q / a);
    }
  }
  for (double r : roots) {
    if (r > lo && r < 1.0) return r;
  }
  throw NumericError("design quadratic has no root in (" + num(lo) +
                     ", 1) although the feasibility test passed");
}

}  // namespace

double deviation_at(const Deviation& h, long j) {
  if (j < 0) return 0.0;
  if (const auto* g = std::get_if<Geometric>(&h)) {
    return std::pow(g->alpha, static_cast<double>(j));
  }
  const auto& seq = std::get<CustomDeviation>(h).h;
  return static_cast<std::size_t>(j) < seq.size() ? seq[j] : 0.0;
}

void AdjacencySpec::validate(int node_count, int outputs) const {
  if (i0 < 0 || i0 >= node_count) {
    throw ValidationError("adjacency agent i0 = " + std::to_string(i0) +
                          " outside [0, " + std::to_string(node_count) + ")");
  }
  if (k0 < 0) throw ValidationError("adjacency start k0 must be >= 0");
  require_nonnegative(m, "deviation magnitude m");
  if (const auto* g = std::get_if<Geometric>(&h)) {
    require_unit_open(g->alpha, "deviation decay alpha");
  } else {
    for (double v : std::get<CustomDeviation>(h).h) {
      require_nonnegative(v, "custom deviation entry");
    }
  }
  if (direction.size() != 0) {
    if (direction.size() != outputs) {
      throw ValidationError("deviation direction has " +
                            std::to_string(direction.size()) +
                            " entries, outputs q = " + std::to_string(outputs));
    }
    if (!(direction.lpNorm<1>() > 0.0)) {
      throw ValidationError("deviation direction must be nonzero");
    }
  }
}

Vector AdjacencySpec::deviation_vector(long k, int outputs) const {
  Vector dir = Vector::Zero(outputs);
  if (direction.size() == 0) {
    dir(0) = 1.0;
  } else {
    dir = direction / direction.lpNorm<1>();
  }
  return magnitude_at(k) * dir;
}

std::string to_string(EpsilonMethod method) {
  switch (method) {
    case EpsilonMethod::kSeries: return "series";
    case EpsilonMethod::kClosedExp: return "closed_exp";
    case EpsilonMethod::kClosedPoly: return "closed_poly";
    case EpsilonMethod::kSimplifiedBound: return "simplified_bound";
  }
  return "unknown";
}

double epsilon_closed_exp_full(double l, double L_norm, double m, double alpha,
                               double c, double g, bool strict) {
  require_nonnegative(l, "l");
  require_nonnegative(L_norm, "||L||_1");
  require_nonnegative(m, "m");
  require_unit_open(alpha, "alpha");
  require_positive(c, "c");
  require_exp_window(l, alpha, g, "l", strict);
  return m * g * L_norm / (c * (g - l) * (g - alpha));
}

double epsilon_closed_exp_reduced(double v, double w, double m, double alpha,
                                  double c, double g, bool strict) {
  require_nonnegative(v, "v");
  require_nonnegative(w, "w");
  require_nonnegative(m, "m");
  require_unit_open(alpha, "alpha");
  require_positive(c, "c");
  require_exp_window(v, alpha, g, "v", strict);
  return m * g * (w + g - v) / (c * (g - v) * (g - alpha));
}

double simplified_bound_full(double l, double L_norm, double m, double c,
                             double g) {
  require_nonnegative(l, "l");
  require_nonnegative(L_norm, "||L||_1");
  require_nonnegative(m, "m");
  require_positive(c, "c");
  if (!(l < g)) {
    throw InfeasibleError("simplified bound needs l < g (l = " + num(l) +
                              ", g = " + num(g) + ")",
                          l - g);
  }
  return m * g * L_norm / (c * (g - l) * (g - l));
}

TruncatedValue epsilon_closed_poly_full(double l, double L_norm, double m,
                                        const Deviation& h, double c,
                                        double tol) {
  require_nonnegative(l, "l");
  require_nonnegative(L_norm, "||L||_1");
  require_nonnegative(m, "m");
  require_positive(c, "c");
  if (!(l < 1.0)) {
    throw InfeasibleError("polynomial closed form needs l < 1, got " + num(l),
                          l - 1.0);
  }
  const double coef = L_norm * m / (c * std::pow(1.0 - l, 3));
  if (coef == 0.0) return {};
  return poly_sum(l, coef, 0.0, h, tol);
}

TruncatedValue epsilon_closed_poly_reduced(double v, double w, double m,
                                           const Deviation& h, double c,
                                           double tol) {
  require_nonnegative(v, "v");
  require_nonnegative(w, "w");
  require_nonnegative(m, "m");
  require_positive(c, "c");
  if (!(v < 1.0)) {
    throw InfeasibleError("polynomial closed form needs v < 1, got " + num(v),
                          v - 1.0);
  }
  if (m == 0.0) return {};
  return poly_sum(v, w * m / (c * std::pow(1.0 - v, 3)), m / c, h, tol);
}

TruncatedValue scalar_privacy_series(double l, double gamma, double direct,
                                     const AdjacencySpec& adj,
                                     const NoiseSchedule& noise, double tol) {
  require_privacy_schedule(noise);
  require_nonnegative(l, "contraction modulus");
  require_positive(tol, "tolerance");
  if (adj.m != 0.0 && (gamma != 0.0 || direct != 0.0)) {
    require_convergent(gamma != 0.0 ? l : 0.0, adj, noise, "l");
  }
  return majorant_sum(l, gamma, direct, 0.0, 0, true, adj, noise, tol);
}

EpsilonReport epsilon_series_full(const std::vector<double>& l, double L_norm,
                                  const AdjacencySpec& adj,
                                  const std::vector<NoiseSchedule>& noise,
                                  double tol) {
  require_agent_count(l.size(), noise.size());
  EpsilonReport r;
  r.method = EpsilonMethod::kSeries;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const TruncatedValue t =
        scalar_privacy_series(l[i], L_norm * adj.m, 0.0, adj, noise[i], tol);
    r.per_agent.push_back(t.value);
    r.truncation_residual = std::max(r.truncation_residual, t.residual);
  }
  return finish(r);
}

EpsilonReport epsilon_series_reduced(const ReducedModuli& moduli,
                                     const AdjacencySpec& adj,
                                     const std::vector<NoiseSchedule>& noise,
                                     double tol) {
  require_agent_count(moduli.v.size(), noise.size());
  EpsilonReport r;
  r.method = EpsilonMethod::kSeries;
  for (std::size_t i = 0; i < moduli.v.size(); ++i) {
    const TruncatedValue t = scalar_privacy_series(
        moduli.v[i], moduli.w[i] * adj.m, adj.m, adj, noise[i], tol);
    r.per_agent.push_back(t.value);
    r.truncation_residual = std::max(r.truncation_residual, t.residual);
  }
  return finish(r);
}

EpsilonReport epsilon_closed_full(const std::vector<double>& l, double L_norm,
                                  const AdjacencySpec& adj,
                                  const std::vector<NoiseSchedule>& noise,
                                  bool strict, double tol) {
  require_agent_count(l.size(), noise.size());
  EpsilonReport r;
  for (std::size_t i = 0; i < l.size(); ++i) {
    require_privacy_schedule(noise[i]);
    if (const auto* e = std::get_if<Exponential>(&noise[i].kind)) {
      r.method = EpsilonMethod::kClosedExp;
      const double alpha = geometric_alpha(adj, "exponential closed form");
      const double base = epsilon_closed_exp_full(l[i], L_norm, adj.m, alpha,
                                                  noise[i].c, e->g, strict);
      r.per_agent.push_back(base * std::pow(e->g, -static_cast<double>(adj.k0)));
    } else {
      const int power = std::get<Polynomial>(noise[i].kind).power;
      if (power != 2) {
        throw ValidationError(
            "polynomial closed form is available for power 2 only, got " +
            std::to_string(power));
      }
      if (adj.k0 != 0) {
        throw ValidationError(
            "polynomial closed form assumes k0 = 0; use the series");
      }
      r.method = EpsilonMethod::kClosedPoly;
      const TruncatedValue t =
          epsilon_closed_poly_full(l[i], L_norm, adj.m, adj.h, noise[i].c, tol);
      r.per_agent.push_back(t.value);
      r.truncation_residual = std::max(r.truncation_residual, t.residual);
    }
  }
  return finish(r);
}

EpsilonReport epsilon_closed_reduced(const ReducedModuli& moduli,
                                     const AdjacencySpec& adj,
                                     const std::vector<NoiseSchedule>& noise,
                                     bool strict, double tol) {
  require_agent_count(moduli.v.size(), noise.size());
  EpsilonReport r;
  for (std::size_t i = 0; i < moduli.v.size(); ++i) {
    require_privacy_schedule(noise[i]);
    if (const auto* e = std::get_if<Exponential>(&noise[i].kind)) {
      r.method = EpsilonMethod::kClosedExp;
      const double alpha = geometric_alpha(adj, "exponential closed form");
      const double base =
          epsilon_closed_exp_reduced(moduli.v[i], moduli.w[i], adj.m, alpha,
                                     noise[i].c, e->g, strict);
      r.per_agent.push_back(base * std::pow(e->g, -static_cast<double>(adj.k0)));
    } else {
      const int power = std::get<Polynomial>(noise[i].kind).power;
      if (power != 2) {
        throw ValidationError(
            "polynomial closed form is available for power 2 only, got " +
            std::to_string(power));
      }
      if (adj.k0 != 0) {
        throw ValidationError(
            "polynomial closed form assumes k0 = 0; use the series");
      }
      r.method = EpsilonMethod::kClosedPoly;
      const TruncatedValue t = epsilon_closed_poly_reduced(
          moduli.v[i], moduli.w[i], adj.m, adj.h, noise[i].c, tol);
      r.per_agent.push_back(t.value);
      r.truncation_residual = std::max(r.truncation_residual, t.residual);
    }
  }
  return finish(r);
}

EpsilonReport simplified_bound_report(const std::vector<double>& l,
                                      double L_norm, const AdjacencySpec& adj,
                                      const std::vector<NoiseSchedule>& noise) {
  require_agent_count(l.size(), noise.size());
  EpsilonReport r;
  r.method = EpsilonMethod::kSimplifiedBound;
  for (std::size_t i = 0; i < l.size(); ++i) {
    require_privacy_schedule(noise[i]);
    const double g = noise[i].decay();
    r.per_agent.push_back(simplified_bound_full(l[i], L_norm, adj.m,
                                                noise[i].c, g) *
                          std::pow(g, -static_cast<double>(adj.k0)));
  }
  return finish(r);
}

DesignResult design_g_full(double eps_star, double m, double alpha, double l,
                           double c, double L_norm, bool strict) {
  require_positive(eps_star, "eps*");
  require_nonnegative(m, "m");
  require_unit_open(alpha, "alpha");
  require_nonnegative(l, "l");
  require_positive(c, "c");
  require_nonnegative(L_norm, "||L||_1");
  if (!(l < 1.0)) {
    throw InfeasibleError("design needs l < 1, got " + num(l), l - 1.0);
  }
  if (strict && !(alpha < l)) {
    throw InfeasibleError("strict mode requires alpha < l (alpha = " +
                              num(alpha) + ", l = " + num(l) + ")",
                          alpha - l);
  }
  DesignResult d;
  d.lower = std::max(l, alpha);
  const double ec = eps_star * c;
  d.margin = m * L_norm - ec * (1 - alpha) * (1 - l);
  if (m * L_norm == 0.0) {
    d.any_g = true;
    d.g = 0.5 * (d.lower + 1.0);
    return d;
  }
  if (!(d.margin < 0.0)) {
    throw InfeasibleError(
        "no g in (max(l, alpha), 1) reaches eps* = " + num(eps_star) +
            ": m ||L||_1 - eps* c (1 - alpha)(1 - l) = " + num(d.margin) +
            " must be negative",
        d.margin);
  }
  d.g = root_in_interval(ec, -(ec * (alpha + l) + m * L_norm), ec * alpha * l,
                         d.lower);
  return d;
}

DesignResult design_g_reduced(double eps_star, double m, double alpha,
                              double v, double w, double c, bool strict) {
  require_positive(eps_star, "eps*");
  require_nonnegative(m, "m");
  require_unit_open(alpha, "alpha");
  require_nonnegative(v, "v");
  require_nonnegative(w, "w");
  require_positive(c, "c");
  if (!(v < 1.0)) {
    throw InfeasibleError("design needs v < 1, got " + num(v), v - 1.0);
  }
  if (strict && !(alpha < v)) {
    throw InfeasibleError("strict mode requires alpha < v (alpha = " +
                              num(alpha) + ", v = " + num(v) + ")",
                          alpha - v);
  }
  DesignResult d;
  d.lower = std::max(v, alpha);
  const double ec = eps_star * c;
  d.margin = m * (w + 1 - v) - ec * (1 - alpha) * (1 - v);
  if (m == 0.0) {
    d.any_g = true;
    d.g = 0.5 * (d.lower + 1.0);
    return d;
  }
  if (!(d.margin < 0.0)) {
    throw InfeasibleError(
        "no g in (max(v, alpha), 1) reaches eps* = " + num(eps_star) +
            ": m (w + 1 - v) - eps* c (1 - alpha)(1 - v) = " + num(d.margin) +
            " must be negative",
        d.margin);
  }
  d.g = root_in_interval(ec - m, -(ec * (alpha + v) + m * (w - v)),
                         ec * alpha * v, d.lower);
  return d;
}

namespace {

struct LedgerInputs {
  Matrix F;        // deviation propagation
  Matrix G;        // input map for dy
  double gamma;    // bound on ||G dy||_1 per unit h
  double modulus;  // ||F||_1
  bool stacks_output;
};

LedgerResult run_ledger(const LedgerInputs& in, int outputs,
                        const AdjacencySpec& adj,
                        const std::vector<NoiseSchedule>& noise, long horizon,
                        double tol) {
  if (horizon < 0) throw ValidationError("ledger horizon must be >= 0");
  const NoiseSchedule& s = noise.at(adj.i0);
  require_privacy_schedule(s);
  const double direct = in.stacks_output ? adj.m : 0.0;
  const double gamma = in.gamma * adj.m;

  LedgerResult r;
  Vector b1 = Vector::Zero(in.F.rows());
  KahanSum sum;
  for (long k = 0; k <= horizon; ++k) {
    const Vector dy = adj.deviation_vector(k, outputs);
    Vector beta = b1;
    if (in.stacks_output) {
      beta.resize(b1.size() + outputs);
      beta << b1, dy;
    }
    sum.add(beta.lpNorm<1>() / scale_at(s, k));
    r.partial.push_back(sum.value());
    r.beta.push_back(beta);
    if (k < horizon) b1 = in.F * b1 + in.G * dy;
  }
  r.horizon_sum = sum.value();

  if (adj.m != 0.0 && (gamma != 0.0 || direct != 0.0)) {
    require_convergent(gamma != 0.0 ? in.modulus : 0.0, adj, s, "modulus");
  } else if (b1.lpNorm<1>() > 0.0) {
    require_convergent(in.modulus, AdjacencySpec{adj.i0, adj.k0, 0.0,
                                                 CustomDeviation{}, {}},
                       s, "modulus");
  }
  const TruncatedValue tail =
      majorant_sum(in.modulus, gamma, direct, b1.lpNorm<1>(), horizon, false,
                   adj, s, tol);
  r.tail_bound = tail.value + tail.residual;
  r.S = r.horizon_sum + r.tail_bound;
  return r;
}

void settle(LedgerResult& r) {
  r.holds = r.S <= r.eps_ref + r.eps_residual + 1e-10 * std::max(1.0, r.eps_ref);
}

}  // namespace

LedgerResult privacy_ledger_full(const LtiPlant& plant, const Matrix& L,
                                 const GainSet& gains, const Graph& graph,
                                 const AdjacencySpec& adj,
                                 const std::vector<NoiseSchedule>& noise,
                                 long horizon, double tol) {
  plant.validate();
  adj.validate(graph.node_count(), plant.q());
  require_agent_count(static_cast<std::size_t>(graph.node_count()),
                      noise.size());
  const int d = degrees(graph)[adj.i0];
  LedgerInputs in;
  in.F = plant.A - L * plant.C - d * plant.B * gains.K;
  in.G = L;
  in.modulus = induced_one_norm(in.F);
  in.gamma = induced_one_norm(L);
  in.stacks_output = false;
  LedgerResult r = run_ledger(in, plant.q(), adj, noise, horizon, tol);
  const TruncatedValue eps = scalar_privacy_series(
      in.modulus, in.gamma * adj.m, 0.0, adj, noise[adj.i0], tol);
  r.eps_ref = eps.value;
  r.eps_residual = eps.residual;
  settle(r);
  return r;
}

LedgerResult privacy_ledger_reduced(const ReducedForm& rf,
                                    const GainSet& gains, const Graph& graph,
                                    const AdjacencySpec& adj,
                                    const std::vector<NoiseSchedule>& noise,
                                    long horizon, double tol) {
  adj.validate(graph.node_count(), rf.outputs());
  require_agent_count(static_cast<std::size_t>(graph.node_count()),
                      noise.size());
  const int d = degrees(graph)[adj.i0];
  const int s = rf.unmeasured();
  LedgerInputs in;
  in.F = rf.A11 - d * rf.B1 * gains.K1(s);
  in.G = rf.A12 - d * rf.B1 * gains.K2(s);
  in.modulus = induced_one_norm(in.F);
  in.gamma = induced_one_norm(in.G);
  in.stacks_output = true;
  LedgerResult r = run_ledger(in, rf.outputs(), adj, noise, horizon, tol);
  const TruncatedValue eps = scalar_privacy_series(
      in.modulus, in.gamma * adj.m, adj.m, adj, noise[adj.i0], tol);
  r.eps_ref = eps.value;
  r.eps_residual = eps.residual;
  settle(r);
  return r;
}

}  // namespace dpc
