// Copyright 2026 The degenerate-ramsey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/defect.hpp"
#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

// One measured conclusion: measured <relation> bound. Moment guarantees
// carry the full MomentResult (and with it the estimator seed) so the check
// can be replayed.
struct Guarantee {
  std::string name;
  std::string relation;  // "<=" or ">="
  double measured = 0;
  double bound = 0;
  bool holds = false;
  std::optional<MomentResult> moment;
};

inline Guarantee size_at_least(std::string name, std::size_t size, double bound) {
  return {std::move(name), ">=", static_cast<double>(size), bound, static_cast<double>(size) >= bound, std::nullopt};
}

inline Guarantee value_at_most(std::string name, double value, double bound) {
  return {std::move(name), "<=", value, bound, value <= bound, std::nullopt};
}

// Exact moments are compared directly; sampled ones must clear the bound
// with the safety margin.
inline Guarantee moment_at_most(std::string name, const MomentResult& m, double bound, double sigmas) {
  return {std::move(name), "<=", m.value, bound, m.upper(sigmas) <= bound, m};
}

inline bool all_hold(const std::vector<Guarantee>& gs) {
  return std::all_of(gs.begin(), gs.end(), [](const Guarantee& g) { return g.holds; });
}

inline std::size_t count_holding(const std::vector<Guarantee>& gs) {
  return static_cast<std::size_t>(std::count_if(gs.begin(), gs.end(), [](const Guarantee& g) { return g.holds; }));
}

struct DrcParams {
  std::size_t d = 2;
  int s = 1;
  std::size_t t = 2;
  double eta = 0.25;
  double eps = 0.5;
  double alpha = 0.5;
  double xi = 0.1;
  double theta = 1;
  std::size_t max_restarts = 100;
  std::size_t candidates = 4;            // drc_pair: second-stage draws compared per restart
  std::vector<std::size_t> t_schedule;   // drc_mutual: replaces t_0..t_r when nonempty
  EvalBudget budget;

  void validate() const {
    detail::require(s >= 0, "s must be non-negative");
    detail::require(t >= static_cast<std::size_t>(s), "dependent random choice needs t >= s");
    detail::require(d >= 1, "arity d must be at least 1");
    detail::require(theta > 0 && std::isfinite(theta), "theta must be positive");
    detail::require(eta > 0 && alpha >= 0 && alpha <= 1, "need eta > 0 and 0 <= alpha <= 1");
    detail::require(max_restarts >= 1, "max_restarts must be at least 1");
  }
};

// Reference round schedule: t_i = 8^{r+1-i}(d+t), d_i = d + sum_{j>i} t_j,
// theta_0 = xi*m, theta_1 = xi^2*m. Overrides replace the t_i wholesale.
struct ChainSchedule {
  std::vector<std::size_t> t;  // t_0..t_r
  std::vector<std::size_t> d;  // d_0..d_r
  double theta0 = 0;
  double theta1 = 0;
  bool overridden = false;

  // t_i/6 >= d_i >= t_{i+1} for i in [1, r-1].
  bool invariant_holds() const {
    for (std::size_t i = 1; i + 1 < t.size(); ++i)
      if (!(static_cast<double>(t[i]) / 6 >= static_cast<double>(d[i]) && d[i] >= t[i + 1])) return false;
    return true;
  }
};

inline ChainSchedule chain_schedule(std::size_t d, std::size_t t, std::size_t r, double xi, std::size_t m,
                                    const std::vector<std::size_t>& override_t = {}) {
  detail::require(r >= 1 && r <= 19, "chain schedule supports 1 <= r <= 19");
  ChainSchedule cs;
  if (override_t.empty()) {
    for (std::size_t i = 0; i <= r; ++i) {
      std::size_t pow8 = 1;
      for (std::size_t k = 0; k < r + 1 - i; ++k) pow8 *= 8;
      cs.t.push_back(pow8 * (d + t));
    }
  } else {
    detail::require(override_t.size() == r + 1, "t_schedule must list t_0..t_r");
    cs.t = override_t;
    cs.overridden = true;
  }
  cs.d.assign(r + 1, d);
  for (std::size_t i = 0; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) cs.d[i] += cs.t[j];
  cs.theta0 = xi * static_cast<double>(m);
  cs.theta1 = xi * xi * static_cast<double>(m);
  return cs;
}

struct DrcOutcome {
  bool success = false;
  int color = -1;                     // 0 red, 1 blue; -1 for plain graphs
  std::vector<VertexSet> sets;
  std::vector<VertexTuple> witnesses;  // the random tuples X that produced the sets
  std::vector<Guarantee> guarantees;
  std::size_t restarts = 0;            // draws consumed
  std::string failure;                 // empty on success
  std::optional<ChainSchedule> schedule;
};

namespace detail {

inline VertexTuple draw_tuple(const std::vector<Vertex>& pool, std::size_t t, Rng& rng) {
  require(t == 0 || !pool.empty(), "cannot draw a tuple from an empty set");
  VertexTuple x(t);
  for (auto& v : x) v = pool[rng.below(pool.size())];
  return x;
}

// Draw X in v1^t, take A = N(X; v2), keep it when |A| >= size_bound and
// mu_{s,theta}(A^d; v1) <= moment_bound. No precondition checks.
inline DrcOutcome drc_draw(const Graph& g, const VertexSet& v1, const VertexSet& v2, std::size_t d, int s,
                           std::size_t t, double theta, double size_bound, double moment_bound, const DrcParams& p,
                           std::uint64_t seed) {
  const auto pool = v1.to_vector();
  DrcOutcome best;
  if (t > 0 && pool.empty()) {
    best.guarantees = {size_at_least("|V1|", 0, 1)};
    best.failure = "cannot draw from an empty set";
    return best;
  }
  std::size_t best_score = 0;
  for (std::size_t restart = 0; restart < p.max_restarts; ++restart) {
    Rng rng(derive_seed(seed, {restart}));
    const VertexTuple x = draw_tuple(pool, t, rng);
    VertexSet a = common_neighbors(g, x, v2);
    std::vector<Guarantee> gs{size_at_least("|A|", a.size(), size_bound)};
    if (gs[0].holds) {
      const auto mu = moment_power(g, {theta, s, d}, a, v1, p.budget, derive_seed(seed, {restart, 1}));
      gs.push_back(moment_at_most("mu_s(A^d; V1)", mu, moment_bound, p.budget.safety_sigmas));
    }
    const std::size_t score = count_holding(gs) * (g.n() + 1) + a.size();
    const bool ok = all_hold(gs) && gs.size() == 2;
    if (ok || restart == 0 || score > best_score) {
      best_score = score;
      best.sets = {std::move(a)};
      best.witnesses = {x};
      best.guarantees = std::move(gs);
    }
    if (ok) {
      best.success = true;
      best.restarts = restart + 1;
      return best;
    }
  }
  best.restarts = p.max_restarts;
  best.failure = "restart budget exhausted";
  return best;
}

}  // namespace detail

// Bipartite dependent random choice: A = N(X; v2) with
// |A| >= eps^{1/d} alpha^t |v2| and mu_{s,theta}(A^d; v1) <= eta^t/(1-eps).
inline DrcOutcome drc_bipartite(const Graph& g, const VertexSet& v1, const VertexSet& v2, const DrcParams& p,
                                std::uint64_t seed) {
  p.validate();
  detail::require(p.eps > 0 && p.eps < 1, "drc_bipartite needs 0 < eps < 1");
  const double cap = p.eta * std::pow(p.alpha, static_cast<double>(p.d)) * static_cast<double>(v1.size());
  detail::require(p.theta <= cap * (1 + 1e-12), "theta exceeds eta * alpha^d * |V1|");
  const double td = static_cast<double>(p.t);
  const double size_bound = std::pow(p.eps, 1.0 / static_cast<double>(p.d)) * std::pow(p.alpha, td) *
                            static_cast<double>(v2.size());
  const double moment_bound = std::pow(p.eta, td) / (1 - p.eps);
  return detail::drc_draw(g, v1, v2, p.d, p.s, p.t, p.theta, size_bound, moment_bound, p, seed);
}

// General dependent random choice: |A| >= alpha^t |v2| / 2 and
// mu_s(A^d; v1) <= 2 eta^t, given e(v1, v2) >= alpha |v1||v2|.
inline DrcOutcome drc_general(const Graph& g, const VertexSet& v1, const VertexSet& v2, const DrcParams& p,
                              std::uint64_t seed) {
  p.validate();
  const double e = static_cast<double>(g.edges_between(v1, v2));
  const double n1 = static_cast<double>(v1.size()), n2 = static_cast<double>(v2.size());
  detail::require(e >= p.alpha * n1 * n2, "e(V1, V2) is below alpha |V1| |V2|");
  detail::require(p.theta <= p.eta * std::pow(p.alpha, static_cast<double>(p.d)) * n1 * (1 + 1e-12),
                  "theta exceeds eta * alpha^d * |V1|");
  const double td = static_cast<double>(p.t);
  return detail::drc_draw(g, v1, v2, p.d, p.s, p.t, p.theta, 0.5 * std::pow(p.alpha, td) * n2,
                          2 * std::pow(p.eta, td), p, seed);
}

struct TransferReport {
  double mean = 0;       // empirical mean of mu(a2^d; N(X; v1))
  double std_error = 0;
  double exact = 0;      // mu(a2^{d+t}; v1)
  double gap = 0;        // mean - exact
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// Defect transfer: E[mu_{s,theta}(a2^d; N(X; v1))] = mu_{s,theta}(a2^{d+t}; v1)
// for X uniform in a2^t. Both sides are evaluated exactly per trial.
inline TransferReport defect_transfer_check(const Graph& g, const VertexSet& a2, const VertexSet& v1, std::size_t d,
                                            std::size_t t, int s, double theta, std::size_t trials,
                                            std::uint64_t seed) {
  detail::require(trials >= 2, "defect_transfer_check needs at least 2 trials");
  detail::require(!a2.empty(), "a2 must be nonempty");
  TransferReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.exact = moment_exact(g, {theta, s, d + t}, std::vector<VertexSet>(d + t, a2), v1).value;
  const auto pool = a2.to_vector();
  const std::vector<VertexSet> factors(d, a2);
  Rng rng(seed);
  double mean = 0, m2 = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const VertexTuple x = detail::draw_tuple(pool, t, rng);
    const double y = moment_exact(g, {theta, s, d}, factors, common_neighbors(g, x, v1)).value;
    const double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }
  rep.mean = mean;
  rep.std_error = std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials));
  rep.gap = rep.mean - rep.exact;
  return rep;
}

// Two-sided dependent random choice on a balanced bipartite pair. Stage 1
// takes A2 from a (d+t)-ary general draw; stage 2 draws candidates X in
// A2^t, scores A1 = N(X; v1) by
//   F = |A1|^d - sum_{A1^d} omega(.; A2)^s / (2 eta^t) - |V1|^d mu(A2^d; A1) / (2 eta^{t/2}),
// keeps the best, and accepts it once all four conclusions measure true.
inline DrcOutcome drc_pair(const Graph& g, const VertexSet& v1, const VertexSet& v2, const DrcParams& p,
                           std::uint64_t seed) {
  p.validate();
  const std::size_t m = v1.size();
  detail::require(m > 0 && v2.size() == m, "drc_pair needs |V1| = |V2| > 0");
  detail::require(v1.disjoint_from(v2), "drc_pair needs disjoint V1, V2");
  const double dm = static_cast<double>(m), dd = static_cast<double>(p.d), td = static_cast<double>(p.t);
  std::size_t min_deg = std::numeric_limits<std::size_t>::max();
  v1.for_each([&](Vertex v) { min_deg = std::min(min_deg, g.degree_in(v, v2)); });
  v2.for_each([&](Vertex v) { min_deg = std::min(min_deg, g.degree_in(v, v1)); });
  detail::require(static_cast<double>(min_deg) >= p.alpha * dm, "bipartite minimum degree is below alpha m");
  detail::require(p.eta <= std::pow(p.alpha, 2 * dd) / 16 * (1 + 1e-12), "drc_pair needs eta <= alpha^{2d}/16");
  detail::require(p.theta <= 0.5 * p.eta * std::pow(p.alpha, dd + td) * dm * (1 + 1e-12),
                  "theta exceeds eta alpha^{d+t} m / 2");

  DrcOutcome out;
  const double size_bound = 0.25 * std::pow(p.alpha, td) * dm;
  const double mutual_bound = 2 * std::pow(p.eta, td / 2);
  const double sig = p.budget.safety_sigmas;
  for (std::size_t restart = 0; restart < p.max_restarts; ++restart) {
    const std::uint64_t rs = derive_seed(seed, {restart});
    DrcParams stage1 = p;
    stage1.max_restarts = 1;
    const DrcOutcome a2o = detail::drc_draw(g, v1, v2, p.d + p.t, p.s, p.t, p.theta, 0.5 * std::pow(p.alpha, td) * dm,
                                            2 * std::pow(p.eta, td), stage1, derive_seed(rs, {1}));
    out.restarts = restart + 1;
    if (!a2o.success) {
      out.guarantees = a2o.guarantees;
      out.failure = "stage 1 (A2) failed";
      continue;
    }
    const VertexSet& a2 = a2o.sets[0];
    const auto pool = a2.to_vector();
    Rng rng(derive_seed(rs, {2}));
    double best_f = -kInfinity;
    VertexTuple best_x;
    VertexSet best_a1;
    std::vector<Guarantee> best_g;
    for (std::size_t c = 0; c < std::max<std::size_t>(p.candidates, 1); ++c) {
      const VertexTuple x = detail::draw_tuple(pool, p.t, rng);
      VertexSet a1 = common_neighbors(g, x, v1);
      const auto mu12 = moment_power(g, {p.theta, p.s, p.d}, a1, a2, p.budget, derive_seed(rs, {3, c}));
      const auto mu21 = moment_power(g, {p.theta, p.s, p.d}, a2, a1, p.budget, derive_seed(rs, {4, c}));
      const double a1d = std::pow(static_cast<double>(a1.size()), dd);
      const double f = a1d - a1d * mu12.value / (2 * std::pow(p.eta, td)) -
                       std::pow(dm, dd) * mu21.value / (2 * std::pow(p.eta, td / 2));
      if (c == 0 || f > best_f) {
        best_f = f;
        best_x = x;
        best_a1 = std::move(a1);
        best_g = {size_at_least("|A1|", best_a1.size(), size_bound), size_at_least("|A2|", a2.size(), size_bound),
                  moment_at_most("mu_s(A1^d; A2)", mu12, mutual_bound, sig),
                  moment_at_most("mu_s(A2^d; A1)", mu21, mutual_bound, sig)};
      }
    }
    out.sets = {best_a1, a2};
    out.witnesses = {best_x, a2o.witnesses[0]};
    out.guarantees = a2o.guarantees;
    for (auto& gg : out.guarantees) gg.name = "stage 1 " + gg.name;
    out.guarantees.insert(out.guarantees.end(), best_g.begin(), best_g.end());
    if (all_hold(best_g)) {
      out.success = true;
      out.failure.clear();
      return out;
    }
    out.failure = "stage 2 conclusions not met";
  }
  out.failure = "restart budget exhausted: " + out.failure;
  return out;
}

namespace detail {

// Ordered-pair density of a color graph inside s.
inline double density_in(const Graph& g, const VertexSet& s) {
  const double n = static_cast<double>(s.size());
  return n == 0 ? 0 : static_cast<double>(g.edges_between(s, s)) / (n * n);
}

inline int majority_color(const std::array<Graph, 2>& colors, const VertexSet& s) {
  return colors[0].edges_between(s, s) >= colors[1].edges_between(s, s) ? 0 : 1;
}

// Nested-chain construction. With check = false the theta precondition is
// skipped (the mutual construction runs the chain at theta_0).
inline DrcOutcome drc_chain_impl(const std::array<Graph, 2>& colors, std::size_t r, const DrcParams& p,
                                 std::uint64_t seed, bool check) {
  p.validate();
  detail::require(r >= 1, "r must be at least 1");
  const std::size_t m = colors[0].n();
  const double dm = static_cast<double>(m), dd = static_cast<double>(p.d), td = static_cast<double>(p.t);
  const double chain_floor = std::pow(2.0, -2 * (td + 1) * static_cast<double>(r - 1));
  if (check)
    require(p.theta <= p.eta * std::pow(2.0, -dd) * chain_floor * dm * (1 + 1e-12),
            "theta exceeds eta 2^{-d-2(t+1)(r-1)} m");
  const VertexSet all = VertexSet::full(m);
  DrcOutcome out;

  if (r == 1) {
    const int c = majority_color(colors, all);
    const double alpha = density_in(colors[c], all);
    out = drc_draw(colors[c], all, all, p.d, p.s, p.t, p.theta, 0.5 * std::pow(alpha, td) * dm,
                   2 * std::pow(p.eta, td), p, seed);
    out.color = c;
    return out;
  }

  // sets[i] = A_i for i = 0..2r-2; colour[i] is the color A_i is labelled with.
  const std::size_t top = 2 * r - 2;
  std::vector<VertexSet> sets(top + 1);
  std::vector<int> label(top + 1, 0);
  sets[top] = all;
  for (std::size_t i = top; i >= 1; --i) {
    const int c = majority_color(colors, sets[i]);
    if (i == top) label[top] = c;
    const double size_bound = std::pow(2.0, -td - 1) * static_cast<double>(sets[i].size());
    DrcOutcome step = drc_draw(colors[c], sets[i], sets[i], p.d, p.s, p.t, p.theta, size_bound,
                               2 * std::pow(p.eta, td), p, derive_seed(seed, {i}));
    out.restarts += step.restarts;
    for (auto& gg : step.guarantees) {
      gg.name = "step " + std::to_string(top + 1 - i) + " " + gg.name;
      out.guarantees.push_back(gg);
    }
    out.witnesses.push_back(step.witnesses.empty() ? VertexTuple{} : step.witnesses[0]);
    if (!step.success) {
      out.failure = "descent step " + std::to_string(top + 1 - i) +
                    (step.restarts == 0 ? " drew from an empty set" : " exhausted its restarts");
      return out;
    }
    sets[i - 1] = std::move(step.sets[0]);
    label[i - 1] = c;
  }

  // 2r-1 labelled sets and two colors: some color labels at least r of them.
  const auto reds = static_cast<std::size_t>(std::count(label.begin(), label.end(), 0));
  const int winner = reds >= r ? 0 : 1;
  std::vector<std::size_t> chosen;
  for (std::size_t i = top + 1; i-- > 0 && chosen.size() < r;)
    if (label[i] == winner) chosen.push_back(i);
  std::reverse(chosen.begin(), chosen.end());
  out.color = winner;
  out.sets.clear();
  for (std::size_t i : chosen) out.sets.push_back(sets[i]);

  const double size_floor = chain_floor * dm;
  for (std::size_t j = 0; j < r; ++j) {
    out.guarantees.push_back(size_at_least("|A_" + std::to_string(j + 1) + "|", out.sets[j].size(), size_floor));
    if (j + 1 < r) {
      const auto mu = moment_power(colors[winner], {p.theta, p.s, p.d}, out.sets[j], out.sets[j + 1], p.budget,
                                   derive_seed(seed, {1000, j}));
      out.guarantees.push_back(moment_at_most("mu_s(A_" + std::to_string(j + 1) + "^d; A_" + std::to_string(j + 2) + ")",
                                              mu, 2 * std::pow(p.eta, td), p.budget.safety_sigmas));
    }
  }
  out.success = all_hold(out.guarantees);
  if (!out.success) out.failure = "final chain guarantees not met";
  return out;
}

}  // namespace detail

// Nested chain A_1 ⊆ ... ⊆ A_r in one color by 2(r-1) majority-color
// descents and a pigeonhole choice of r same-labelled sets.
inline DrcOutcome drc_chain(const TwoColoring& coloring, std::size_t r, const DrcParams& p, std::uint64_t seed) {
  const std::array<Graph, 2> colors{coloring.red, coloring.blue()};
  return detail::drc_chain_impl(colors, r, p, seed, true);
}

namespace detail {

inline VertexSet union_except(const std::vector<VertexSet>& sets, std::size_t skip) {
  VertexSet u(sets.front().universe());
  for (std::size_t j = 0; j < sets.size(); ++j)
    if (j != skip) u |= sets[j];
  return u;
}

}  // namespace detail

// Mutual dependent random choice: r sets in one color with
// |A_j| >= theta and mu_{s,theta}(A_{-j}^d; A_j) <= xi^t. The nested chain
// (run with s = 0 at theta_0) seeds r refinement rounds; round i draws X in
// B_i^{t_i}, intersects every other set with N(X), and is redrawn until the
// four round events measure true.
inline DrcOutcome drc_mutual(const TwoColoring& coloring, std::size_t r, const DrcParams& p, std::uint64_t seed) {
  p.validate();
  const std::size_t m = coloring.m;
  detail::require(r >= 1, "r must be at least 1");
  detail::require(p.xi > 0 && p.xi < 1, "drc_mutual needs 0 < xi < 1");
  detail::require(p.theta <= p.xi * p.xi * static_cast<double>(m) * (1 + 1e-12), "theta exceeds xi^2 m");
  const ChainSchedule cs = chain_schedule(p.d, p.t, r, p.xi, m, p.t_schedule);
  const std::array<Graph, 2> colors{coloring.red, coloring.blue()};
  const double sig = p.budget.safety_sigmas;
  const double rr = static_cast<double>(r);

  DrcParams chain_p = p;
  chain_p.d = cs.d[0];
  chain_p.s = 0;
  chain_p.t = cs.t[0];
  chain_p.theta = cs.theta0;
  DrcOutcome out = detail::drc_chain_impl(colors, r, chain_p, derive_seed(seed, {0}), false);
  out.schedule = cs;
  for (auto& gg : out.guarantees) gg.name = "chain " + gg.name;
  if (!out.success) {
    out.failure = "chain: " + out.failure;
    return out;
  }
  const Graph& g = colors[out.color];
  std::vector<VertexSet> b = out.sets;

  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t ti = cs.t[i + 1], di = cs.d[i + 1];
    const double xi_prev = std::pow(p.xi, static_cast<double>(cs.t[i]) / 4);
    const auto pool = b[i].to_vector();
    if (ti > 0 && pool.empty()) {
      out.success = false;
      out.sets = b;
      out.failure = "round " + std::to_string(i + 1) + ": cannot draw from an empty set";
      return out;
    }
    std::map<int, std::size_t> first_fail;
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < p.max_restarts && !accepted; ++attempt) {
      const std::uint64_t as = derive_seed(seed, {1 + i, attempt});
      Rng rng(as);
      const VertexTuple x = detail::draw_tuple(pool, ti, rng);
      std::vector<VertexSet> a = b;
      const VertexSet nx = common_neighbors(g, x, VertexSet::full(m));
      for (std::size_t j = 0; j < r; ++j)
        if (j != i) a[j] &= nx;
      std::vector<Guarantee> ev;
      int failed = 0;
      auto add = [&](int event, Guarantee gg) {
        gg.name = "round " + std::to_string(i + 1) + " event " + std::to_string(event) + " " + gg.name;
        if (!gg.holds && failed == 0) failed = event;
        ev.push_back(std::move(gg));
      };
      for (std::size_t j = 0; j < r; ++j)
        add(1, size_at_least("|A_" + std::to_string(j + 1) + "|", a[j].size(), j >= i ? cs.theta0 : cs.theta1));
      if (failed == 0) {
        std::uint64_t k = 0;
        for (std::size_t j = i; j + 1 < r; ++j)
          add(2, moment_at_most("mu_0(B_" + std::to_string(j + 1) + "^d_i; A_" + std::to_string(j + 2) + ")",
                                moment_power(g, {cs.theta0, 0, di}, b[j], a[j + 1], p.budget, derive_seed(as, {2, k++})),
                                4 * rr * xi_prev, sig));
        for (std::size_t j = 0; j < i; ++j)
          add(3, moment_at_most("mu_s(B_-" + std::to_string(j + 1) + "^d_i; A_" + std::to_string(j + 1) + ")",
                                moment_power(g, {cs.theta1, p.s, di}, detail::union_except(b, j), a[j], p.budget,
                                             derive_seed(as, {3, k++})),
                                4 * rr * xi_prev, sig));
        // sum_{A_-i^{d_i}} omega^s <= 4 |B_-i|^{d_i} xi^{t_i}, divided through by |A_-i|^{d_i}.
        const VertexSet a_rest = detail::union_except(a, i), b_rest = detail::union_except(b, i);
        if (r > 1) {
          const double ratio = std::pow(static_cast<double>(b_rest.size()) / static_cast<double>(a_rest.size()),
                                        static_cast<double>(di));
          add(4, moment_at_most("mu_s(A_-" + std::to_string(i + 1) + "^d_i; B_" + std::to_string(i + 1) + ")",
                                moment_power(g, {cs.theta1, p.s, di}, a_rest, b[i], p.budget, derive_seed(as, {4})),
                                4 * ratio * std::pow(p.xi, static_cast<double>(ti)), sig));
        }
      }
      out.restarts += 1;
      if (failed == 0) {
        accepted = true;
        out.guarantees.insert(out.guarantees.end(), ev.begin(), ev.end());
        out.witnesses.push_back(x);
        b = std::move(a);
      } else {
        ++first_fail[failed];
      }
    }
    if (!accepted && first_fail.empty()) {
      out.success = false;
      out.sets = b;
      out.failure = "round " + std::to_string(i + 1) + ": no attempts allowed";
      return out;
    }
    if (!accepted) {
      const auto worst = std::max_element(first_fail.begin(), first_fail.end(),
                                          [](const auto& x, const auto& y) { return x.second < y.second; });
      out.success = false;
      out.sets = b;
      out.failure = "round " + std::to_string(i + 1) + ": event " + std::to_string(worst->first) +
                    " failed on every attempt";
      return out;
    }
  }

  out.sets = b;
  const double final_bound = std::pow(p.xi, static_cast<double>(p.t));
  for (std::size_t j = 0; j < r; ++j) {
    out.guarantees.push_back(size_at_least("|A_" + std::to_string(j + 1) + "|", b[j].size(), p.theta));
    if (r > 1)
      out.guarantees.push_back(
          moment_at_most("mu_s(A_-" + std::to_string(j + 1) + "^d; A_" + std::to_string(j + 1) + ")",
                         moment_power(g, {p.theta, p.s, p.d}, detail::union_except(b, j), b[j], p.budget,
                                      derive_seed(seed, {9999, j})),
                         final_bound, sig));
  }
  out.success = all_hold(out.guarantees);
  out.failure = out.success ? "" : "final mutual guarantees not met";
  return out;
}

}  // namespace ramsey
