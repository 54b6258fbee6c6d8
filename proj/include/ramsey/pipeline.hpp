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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/decompose.hpp"
#include "ramsey/defect.hpp"
#include "ramsey/drc.hpp"
#include "ramsey/embed.hpp"
#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/prune.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

// Stage parameters. Zero for d, r, theta, eta or alpha means "derive it":
// d from the pattern, r from its coloring, alpha from the host, and eta and
// theta from the largest values the DRC stage accepts.
struct PipelineConfig {
  std::size_t d = 0;
  std::size_t r = 0;
  int s = 1;
  std::size_t t = 1;
  double theta = 0;
  double eta = 0;
  double eps = 0.5;
  double eps_prime = 0.5;
  double xi = 0.1;
  double alpha = 0;
  std::vector<double> p;                // empty: p_i proportional to 2^{-i/(80d)}, summing to 1
  std::vector<std::size_t> t_schedule;  // mutual DRC round exponents, see ChainSchedule
  bool prune = false;
  bool fallback = false;        // brute-force search for tiny patterns after the pipeline fails
  std::size_t fallback_limit = 8;
  std::size_t fallback_nodes = 5000000;
  bool bound_diagnostic = false;  // evaluate mu_{4D} and the failure bound for each plan
  std::size_t drc_restarts = 100;
  std::size_t partition_restarts = 50;
  std::size_t embed_attempts = 20;  // greedy runs per partition
  std::size_t outer_retries = 5;
  std::size_t e1_samples = 20000;
  double e1_tolerance = 0;
  std::size_t e2_cap = 64;
  EvalBudget budget;

  void validate() const {
    detail::require(s >= 0, "s must be non-negative");
    detail::require(t >= static_cast<std::size_t>(s), "DRC stages need t >= s");
    detail::require(eps > 0 && eps < 1 && eps_prime > 0, "eps must lie in (0,1) and eps_prime must be positive");
    detail::require(xi > 0 && xi < 1, "xi must lie in (0,1)");
    detail::require(theta >= 0 && eta >= 0 && alpha >= 0 && alpha <= 1, "theta, eta, alpha out of range");
    double sum = 0;
    for (double x : p) {
      detail::require(x > 0, "p_i must be positive");
      sum += x;
    }
    detail::require(sum <= 1 + 1e-9, "p_i must sum to at most 1");
    detail::require(embed_attempts >= 1 && outer_retries >= 1, "retry budgets must be positive");
  }
};

// p_i = c 2^{-i/(80d)} for i = 1..k with c chosen so the p_i sum to 1.
inline std::vector<double> geometric_schedule(std::size_t k, std::size_t d) {
  std::vector<double> p;
  double sum = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    p.push_back(std::pow(2.0, -static_cast<double>(i) / (80.0 * static_cast<double>(std::max<std::size_t>(d, 1)))));
    sum += p.back();
  }
  for (auto& x : p) x /= sum;
  return p;
}

// The asymptotic parameter block of the general and bipartite proofs, as
// base-2 logarithms (the values underflow a double). c is the unspecified
// absolute constant, reported at c = 1.
struct ReferenceParameters {
  std::size_t t = 0;  // t = s = 32d
  double log2_eta = 0;     // bipartite: eta = alpha^{36d} / 128
  double log2_theta_over_m = 0;  // bipartite: theta = eta alpha^{4d+t} m / 8
  double log2_xi = 0;      // general: xi = 2^{-d 2^{(c/2) r}}
};

inline ReferenceParameters reference_parameters(std::size_t d, std::size_t r, double alpha) {
  ReferenceParameters rp;
  const double dd = static_cast<double>(d);
  rp.t = 32 * d;
  const double la = alpha > 0 ? std::log2(alpha) : -kInfinity;
  rp.log2_eta = 36 * dd * la - 7;
  rp.log2_theta_over_m = rp.log2_eta + (4 * dd + static_cast<double>(rp.t)) * la - 3;
  rp.log2_xi = -dd * std::pow(2.0, 0.5 * static_cast<double>(r));
  return rp;
}

struct StageReport {
  std::string name;
  bool success = false;
  std::size_t restarts = 0;
  std::vector<Guarantee> guarantees;
  std::string note;
};

struct PipelineResult {
  bool success = false;
  int color = -1;  // winning color for colorings
  std::vector<Vertex> map;
  std::uint64_t seed = 0;
  std::size_t d = 0;  // host arity D
  std::size_t r = 0;
  double theta = 0;
  std::size_t outer_attempts = 0;
  std::size_t embed_runs = 0;
  std::size_t lazy_e1_checked = 0;
  std::size_t lazy_e1_violations = 0;
  bool used_fallback = false;
  std::vector<StageReport> stages;
  std::optional<EmbedPlan> plan;        // plan of the last greedy run
  std::optional<EmbedState> state;      // last greedy run
  std::optional<Certificate> certificate;
  std::optional<double> mu;             // mu_{4D} of the plan
  std::optional<double> bound;          // failure bound of the plan
  std::optional<Verification> verification;
  ReferenceParameters reference;
  std::string failed_stage;
  std::string failure;
};

enum class Containment { yes, no, unknown };

inline std::string containment_name(Containment c) {
  return c == Containment::yes ? "true" : c == Containment::no ? "false" : "unknown";
}

struct ContainmentResult {
  Containment answer = Containment::unknown;
  std::vector<Vertex> map;
  std::size_t nodes = 0;
};

// Backtracking subgraph search: pattern vertices in a connected,
// degree-first order, candidates restricted to common neighbors of the
// already placed pattern neighbors. Gives up after node_budget extensions.
inline ContainmentResult brute_force_contains(const Graph& g, const Graph& h, std::size_t node_budget = 5000000) {
  ContainmentResult res;
  const std::size_t n = h.n();
  if (n > g.n()) {
    res.answer = Containment::no;
    return res;
  }
  std::vector<Vertex> order;
  VertexSet placed(n);
  while (order.size() < n) {
    Vertex best = 0;
    long best_key = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (placed.contains(v)) continue;
      const long key = static_cast<long>(h.degree_in(v, placed)) * static_cast<long>(n + 1) +
                       static_cast<long>(h.degree(v));
      if (key > best_key) {
        best_key = key;
        best = v;
      }
    }
    order.push_back(best);
    placed.insert(best);
  }
  std::vector<Vertex> map(n, kUnmapped);
  VertexSet used(g.n());
  bool out_of_budget = false;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const Vertex x = order[depth];
    VertexSet cand = VertexSet::full(g.n()) - used;
    for (std::size_t a = 0; a < depth; ++a)
      if (h.adjacent(x, order[a])) cand.intersect_row(g.row(map[order[a]]));
    bool found = false;
    cand.for_each([&](Vertex v) {
      if (found || out_of_budget) return;
      if (++res.nodes > node_budget) {
        out_of_budget = true;
        return;
      }
      map[x] = v;
      used.insert(v);
      if (self(self, depth + 1)) {
        found = true;
        return;
      }
      used.erase(v);
      map[x] = kUnmapped;
    });
    return found;
  };
  if (search(search, 0)) {
    res.answer = Containment::yes;
    res.map = map;
  } else {
    res.answer = out_of_budget ? Containment::unknown : Containment::no;
  }
  return res;
}

namespace detail {

// Every signature {target layer, forward layers...} the plan will query.
inline std::vector<std::vector<std::size_t>> plan_signatures(const EmbedPlan& plan) {
  std::set<std::vector<std::size_t>> sigs;
  const std::size_t top = plan.top_layer();
  for (Vertex x = 0; x < plan.pattern.n(); ++x) {
    if (plan.partition.layer_of[x] == top || plan.forward.forward[x].empty()) continue;
    std::vector<std::size_t> sig{plan.partition.layer_of[x]};
    for (Vertex y : plan.forward.forward[x]) sig.push_back(plan.partition.layer_of[y]);
    std::sort(sig.begin() + 1, sig.end());
    sigs.insert(std::move(sig));
  }
  return {sigs.begin(), sigs.end()};
}

// Partition parameters for a plan: the configured or geometric p schedule,
// the plan's product signatures as required E2 checks.
inline PartitionParams partition_params(const PipelineConfig& cfg, const EmbedPlan& plan, std::size_t arity,
                                        double theta) {
  const std::size_t k = plan.partition.k;
  PartitionParams pp;
  pp.p = cfg.p.empty() ? geometric_schedule(k, arity) : cfg.p;
  detail::require(pp.p.size() == k, "p schedule has " + std::to_string(pp.p.size()) + " entries but the pattern has " +
                                        std::to_string(k) + " levels");
  pp.theta = theta;
  pp.eps = cfg.eps;
  pp.eps_prime = cfg.eps_prime;
  pp.s = cfg.s;
  pp.d = arity;
  pp.max_restarts = cfg.partition_restarts;
  pp.e1_samples = cfg.e1_samples;
  pp.e1_tolerance = cfg.e1_tolerance;
  pp.e2_cap = cfg.e2_cap;
  pp.e2_required = plan_signatures(plan);
  pp.budget = cfg.budget;
  return pp;
}

// Lazy E1: every tuple the greedy run actually queried keeps at least half
// its expected share of N(Q; B_j) inside its layer.
inline std::pair<std::size_t, std::size_t> lazy_e1(const Graph& g, const EmbedPlan& plan, const EmbedState& st,
                                                   const std::vector<VertexSet>& b, const PartitionParams& pp) {
  std::size_t checked = 0, bad = 0;
  const std::size_t r = b.size(), top = plan.top_layer();
  for (Vertex x = 0; x < plan.pattern.n(); ++x) {
    const std::size_t L = plan.partition.layer_of[x];
    if (L == top || plan.forward.forward[x].empty()) continue;
    VertexTuple q;
    bool complete = true;
    for (Vertex y : plan.forward.forward[x]) {
      if (st.map[y] == kUnmapped) complete = false;
      q.push_back(st.map[y]);
    }
    if (!complete) continue;
    const std::size_t i = L / r, j = L % r;
    const std::size_t nb = common_neighbor_count(g, q, b[j]);
    const std::size_t nv = common_neighbor_count(g, q, plan.targets[L]);
    ++checked;
    if (static_cast<double>(nv) < 0.5 * pp.q(i, r) * static_cast<double>(nb)) ++bad;
  }
  return {checked, bad};
}

inline StageReport drc_report(std::string name, const DrcOutcome& o) {
  return {std::move(name), o.success, o.restarts, o.guarantees, o.failure};
}

// Pattern coloring with colors relabelled for the smallest forward degree.
inline std::vector<int> pattern_coloring(const Graph& h, std::vector<int> c, std::size_t d, std::size_t r) {
  return r <= 6 ? best_color_order(h, c, d, r) : c;
}

// Shared back half: prune (optional), random partition, plan, greedy runs.
// Returns true on a verified embedding; false asks for another outer attempt.
inline bool partition_and_embed(const Graph& g, const Graph& h, const std::vector<int>& coloring, std::size_t d,
                                std::size_t r, std::vector<VertexSet> sets, const PipelineConfig& cfg,
                                std::uint64_t seed, PipelineResult& res) {
  if (cfg.prune) {
    const auto pr = remove_concentrated(g, sets, res.d, cfg.s, res.theta, cfg.budget, derive_seed(seed, {1}));
    res.stages.push_back({"prune", pr.success, 1, pr.guarantees, pr.failure});
    if (!pr.success) {
      res.failed_stage = "prune";
      res.failure = pr.failure;
      return false;
    }
    sets = pr.sets;
  }

  EmbedPlan plan = pattern_plan(h, coloring, d, r, res.d);
  const std::size_t k = plan.partition.k;
  const PartitionParams pp = partition_params(cfg, plan, res.d, res.theta);
  const auto po = random_partition(g, sets, k, pp, derive_seed(seed, {2}));
  {
    StageReport rep{"partition", po.success, po.restarts, po.guarantees, po.failure};
    rep.note = "E1 sampled " + std::to_string(po.e1_samples) + " tuples, worst violation fraction " +
               std::to_string(po.e1_worst_fraction) + ", dominance violations " +
               std::to_string(po.dominance_violations) + ", rejected draws E1/E2/E3 " +
               std::to_string(po.event_failures[0]) + "/" + std::to_string(po.event_failures[1]) + "/" +
               std::to_string(po.event_failures[2]) + (po.p_floor_met ? "" : ", p_i floor not met");
    res.stages.push_back(std::move(rep));
  }
  if (!po.success) {
    res.failed_stage = "partition";
    res.failure = po.failure;
    return false;
  }

  plan.targets = po.sets;
  for (std::size_t L = 0; L < plan.layer_count(); ++L)
    plan.thetas.push_back(std::max(po.theta_i[L / r], 2 * static_cast<double>(plan.partition.layers[L].size())));
  if (cfg.bound_diagnostic) {
    const auto pm = plan_moment(g, plan, static_cast<int>(4 * res.d), cfg.budget, derive_seed(seed, {4}));
    res.mu = pm.value;
    res.bound = failure_bound(plan, pm.value);
  }

  StageReport emb{"embed", false, 0, {}, ""};
  for (std::size_t e = 0; e < cfg.embed_attempts; ++e) {
    auto st = random_greedy_embed(g, plan, derive_seed(seed, {3, e}));
    ++res.embed_runs;
    ++emb.restarts;
    const auto [checked, bad] = lazy_e1(g, plan, st, sets, pp);
    res.lazy_e1_checked += checked;
    res.lazy_e1_violations += bad;
    res.certificate = certificate_check(st, plan, std::max(cfg.s, 1));
    res.state = std::move(st);
    res.plan = plan;
    if (res.state->success) {
      res.verification = verify_embedding(h, g, res.state->map);
      detail::require(res.verification->ok, "internal: greedy success failed verification");
      emb.success = true;
      emb.note = "certificate " + std::string(res.certificate->all_pass() ? "passes" : "does not pass");
      res.stages.push_back(std::move(emb));
      res.map = res.state->map;
      res.success = true;
      return true;
    }
    if (bad > 0) {
      emb.note = "queried tuples violated E1; redrawing the partition";
      break;
    }
  }
  const auto& fail = res.state->log[res.state->first_failure];
  if (emb.note.empty())
    emb.note = "last failure: vertex " + std::to_string(fail.x) + " fired step " + step_name(fail.step);
  res.stages.push_back(std::move(emb));
  res.failed_stage = "embed";
  res.failure = "greedy embedding failed in " + std::to_string(cfg.embed_attempts) + " runs";
  return false;
}

inline void finish_with_fallback(const Graph& h, const std::vector<Graph>& hosts, const std::vector<int>& colors,
                                 const PipelineConfig& cfg, PipelineResult& res) {
  if (res.success || !cfg.fallback || h.n() > cfg.fallback_limit) return;
  for (std::size_t a = 0; a < hosts.size(); ++a) {
    const auto bf = brute_force_contains(hosts[a], h, cfg.fallback_nodes);
    if (bf.answer == Containment::yes) {
      res.success = true;
      res.used_fallback = true;
      res.color = colors[a];
      res.map = bf.map;
      res.verification = verify_embedding(h, hosts[a], res.map);
      res.stages.push_back({"fallback", true, bf.nodes, {}, "brute-force search"});
      res.failed_stage.clear();
      res.failure.clear();
      return;
    }
  }
  res.stages.push_back({"fallback", false, 0, {}, "brute-force search found no copy"});
}

}  // namespace detail

// Bipartite pipeline: min-degree subgraph, balanced random halves, two-sided
// DRC, random partition into the pattern layers, random-greedy embedding.
inline PipelineResult embed_bipartite_pipeline(const Graph& g, const Graph& h, const PipelineConfig& cfg,
                                               std::uint64_t seed) {
  cfg.validate();
  detail::require(h.n() <= g.n(), "pattern has more vertices than the host");
  const auto sides = bipartition(h);
  detail::require(h.n() == 0 || !sides.empty(), "pattern is not bipartite");
  const std::size_t deg = degeneracy(h).d;
  const std::size_t d = cfg.d == 0 ? std::max<std::size_t>(deg, 1) : cfg.d;
  detail::require(deg <= d, "pattern degeneracy exceeds d");
  PipelineResult res;
  res.seed = seed;
  res.r = 2;
  if (h.n() == 0) {
    res.success = true;
    return res;
  }
  const auto coloring = detail::pattern_coloring(h, sides, d, 2);
  res.d = std::max<std::size_t>(forward_plan(h, split(h, coloring, d, 2), 4 * d).max_forward(), 1);
  const std::size_t m = g.n();
  const double density = m < 2 ? 0 : 2.0 * static_cast<double>(g.edge_count()) / (static_cast<double>(m) * static_cast<double>(m - 1));
  const double alpha = cfg.alpha > 0 ? cfg.alpha : density;
  res.reference = reference_parameters(d, 2, alpha);

  const VertexSet core = min_degree_subgraph(g, alpha * static_cast<double>(m) / 2);
  res.stages.push_back({"min-degree", !core.empty(), 1,
                        {size_at_least("|core|", core.size(), 2 * static_cast<double>(h.n()))}, ""});
  if (core.size() < 2 * h.n()) {
    res.failed_stage = "min-degree";
    res.failure = "min-degree subgraph too small";
    return res;
  }
  for (std::size_t a = 0; a < cfg.outer_retries && !res.success; ++a) {
    const std::uint64_t sa = derive_seed(seed, {a});
    res.outer_attempts = a + 1;
    auto pool = core.to_vector();
    Rng rng(derive_seed(sa, {0}));
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    const std::size_t half = pool.size() / 2;
    VertexSet v1(m), v2(m);
    for (std::size_t i = 0; i < half; ++i) {
      v1.insert(pool[i]);
      v2.insert(pool[half + i]);
    }
    std::size_t min_deg = half;
    v1.for_each([&](Vertex v) { min_deg = std::min(min_deg, g.degree_in(v, v2)); });
    v2.for_each([&](Vertex v) { min_deg = std::min(min_deg, g.degree_in(v, v1)); });
    DrcParams dp;
    dp.d = res.d;
    dp.s = cfg.s;
    dp.t = cfg.t;
    dp.alpha = static_cast<double>(min_deg) / static_cast<double>(half);
    const double dd = static_cast<double>(dp.d), td = static_cast<double>(dp.t), hm = static_cast<double>(half);
    dp.eta = cfg.eta > 0 ? cfg.eta : std::pow(dp.alpha, 2 * dd) / 16;
    const double theta_cap = 0.5 * dp.eta * std::pow(dp.alpha, dd + td) * hm;
    dp.theta = cfg.theta > 0 ? std::min(cfg.theta, theta_cap) : theta_cap;
    dp.eps = cfg.eps;
    dp.max_restarts = cfg.drc_restarts;
    dp.budget = cfg.budget;
    res.theta = dp.theta;
    if (dp.alpha <= 0) {
      res.stages.push_back({"halves", false, 1, {}, "a vertex has no neighbor across the halves"});
      continue;
    }
    const auto pair = drc_pair(g, v1, v2, dp, derive_seed(sa, {1}));
    res.stages.push_back(detail::drc_report("drc-pair", pair));
    if (!pair.success) {
      res.failed_stage = "drc-pair";
      res.failure = pair.failure;
      continue;
    }
    if (detail::partition_and_embed(g, h, coloring, d, 2, pair.sets, cfg, derive_seed(sa, {2}), res)) break;
  }
  detail::finish_with_fallback(h, {g}, {-1}, cfg, res);
  return res;
}

// General pipeline on a two-coloring: mutual DRC picks a color and r sets,
// optional concentration pruning, random partition, random-greedy embedding
// of the pattern in that color.
inline PipelineResult find_monochromatic(const TwoColoring& coloring, const Graph& h, const PipelineConfig& cfg,
                                         std::uint64_t seed, std::optional<std::vector<int>> pattern_colors = {}) {
  cfg.validate();
  const std::size_t m = coloring.m;
  detail::require(h.n() <= m, "pattern has more vertices than the host");
  const auto deg = degeneracy(h);
  const std::size_t d = cfg.d == 0 ? std::max<std::size_t>(deg.d, 1) : cfg.d;
  detail::require(deg.d <= d, "pattern degeneracy exceeds d");
  std::vector<int> pc = pattern_colors ? *pattern_colors : greedy_color(h, deg.ordering);
  detail::require(pc.size() == h.n() && is_proper_coloring(h, pc), "pattern coloring is not proper");
  const std::size_t used = static_cast<std::size_t>(color_count(pc));
  const std::size_t r = cfg.r == 0 ? std::max<std::size_t>(2, used) : cfg.r;
  detail::require(used <= r, "pattern needs more colors than r");
  PipelineResult res;
  res.seed = seed;
  res.r = r;
  const std::array<Graph, 2> colors{coloring.red, coloring.blue()};
  if (h.n() == 0) {
    res.success = true;
    res.color = 0;
    return res;
  }
  pc = detail::pattern_coloring(h, pc, d, r);
  res.d = std::max<std::size_t>(forward_plan(h, split(h, pc, d, r), 4 * d).max_forward(), 1);
  res.reference = reference_parameters(d, r, 0.5);
  if (cfg.prune)
    detail::require(static_cast<std::size_t>(cfg.s) >= 4 * res.d, "pruning needs s >= 4D");
  const double theta_cap = cfg.xi * cfg.xi * static_cast<double>(m);
  res.theta = cfg.theta > 0 ? cfg.theta : theta_cap;
  detail::require(res.theta <= theta_cap * (1 + 1e-12), "theta exceeds xi^2 m");

  for (std::size_t a = 0; a < cfg.outer_retries && !res.success; ++a) {
    const std::uint64_t sa = derive_seed(seed, {a});
    res.outer_attempts = a + 1;
    DrcParams dp;
    dp.d = res.d;
    dp.s = cfg.s;
    dp.t = cfg.t;
    dp.xi = cfg.xi;
    dp.eta = cfg.eta > 0 ? cfg.eta : 0.25;
    dp.theta = res.theta;
    dp.max_restarts = cfg.drc_restarts;
    dp.t_schedule = cfg.t_schedule;
    dp.budget = cfg.budget;
    const auto mu = drc_mutual(coloring, r, dp, derive_seed(sa, {1}));
    res.stages.push_back(detail::drc_report("drc-mutual", mu));
    if (!mu.success) {
      res.failed_stage = "drc-mutual";
      res.failure = mu.failure;
      continue;
    }
    res.color = mu.color;
    if (detail::partition_and_embed(colors[mu.color], h, pc, d, r, mu.sets, cfg, derive_seed(sa, {2}), res)) break;
  }
  detail::finish_with_fallback(h, {colors[0], colors[1]}, {0, 1}, cfg, res);
  return res;
}

}  // namespace ramsey
