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
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/decompose.hpp"
#include "ramsey/defect.hpp"
#include "ramsey/drc.hpp"
#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

inline constexpr Vertex kUnmapped = std::numeric_limits<Vertex>::max();

// How a pattern vertex was placed. Only top and fresh placements keep the
// map injective and edge-preserving.
enum class Step {
  top,     // uniform injection of the first layer
  empty,   // N = {}: uniform vertex of the layer
  crowded, // fewer than half of N unused: uniform vertex of N
  fresh,   // uniform unused vertex of N
};

inline std::string step_name(Step s) {
  switch (s) {
    case Step::top: return "1";
    case Step::empty: return "3-1";
    case Step::crowded: return "3-2";
    case Step::fresh: return "3-3";
  }
  return "?";
}

struct EmbedPlan {
  Graph pattern;
  LayeredPartition partition;
  ForwardPlan forward;
  std::vector<VertexSet> targets;  // host set V_L per flat layer
  std::vector<double> thetas;      // theta_L per flat layer

  std::size_t layer_count() const { return partition.layer_count(); }

  // Highest flat index holding a pattern vertex; layers run downward from it.
  std::size_t top_layer() const {
    for (std::size_t L = layer_count(); L-- > 0;)
      if (!partition.layers[L].empty()) return L;
    return 0;
  }
};

// Pattern half of a plan: split by the given proper coloring and pad every
// forward tuple to d_pad (0 means the largest forward degree, at least 1).
// The caller fills targets and thetas.
inline EmbedPlan pattern_plan(const Graph& h, std::span<const int> coloring, std::size_t d, std::size_t r,
                              std::size_t d_pad = 0) {
  EmbedPlan plan;
  plan.pattern = h;
  plan.partition = split(h, coloring, d, r);
  if (d_pad == 0) {
    for (const auto& f : forward_neighbors(h, plan.partition)) d_pad = std::max(d_pad, f.size());
    d_pad = std::max<std::size_t>(d_pad, 1);
  }
  plan.forward = forward_plan(h, plan.partition, d_pad);
  return plan;
}

inline void validate_plan(const Graph& g, const EmbedPlan& plan) {
  const std::size_t n = plan.pattern.n(), layers = plan.layer_count();
  detail::require(plan.partition.n == n && plan.forward.n == n, "plan parts disagree on the pattern size");
  detail::require(plan.targets.size() == layers && plan.thetas.size() == layers,
                  "plan needs one host set and one theta per layer");
  for (std::size_t L = 0; L < layers; ++L) {
    detail::require(plan.targets[L].universe() == g.n(), "host set does not belong to this host");
    detail::require(plan.thetas[L] > 0, "layer thresholds must be positive");
    for (std::size_t M = L + 1; M < layers; ++M)
      detail::require(plan.targets[L].disjoint_from(plan.targets[M]), "host sets of distinct layers must be disjoint");
  }
}

struct Placement {
  Vertex x = 0;
  std::size_t layer = 0;
  Step step = Step::top;
  double omega = 0;              // omega_{theta_L}(psi(e_x); V_L)
  std::size_t neighborhood = 0;  // |N(psi(e_x); V_L)|
  std::size_t free = 0;          // |N \ used|
  Vertex image = kUnmapped;
};

struct EmbedState {
  std::vector<Vertex> map;     // pattern vertex -> host vertex or kUnmapped
  VertexSet used;
  std::vector<double> omega;   // omega(x; psi) per pattern vertex, 0 on the top layer
  std::vector<double> lambda;  // per layer: sum of omega^{2 d_pad}
  std::vector<Placement> log;  // in placement order
  bool success = false;
  std::size_t first_failure = std::numeric_limits<std::size_t>::max();  // index into log
  std::uint64_t seed = 0;

  bool failed_at(std::size_t i) const { return i == first_failure; }
};

namespace detail {

// N(psi(e_x); V_L) with dummies skipped; an unplaced forward neighbor (after
// an earlier failure) leaves nothing to intersect with.
inline VertexSet image_neighborhood(const Graph& g, const EmbedPlan& plan, const std::vector<Vertex>& map, Vertex x) {
  const std::size_t L = plan.partition.layer_of[x];
  VertexSet nb = plan.targets[L];
  for (Vertex y : plan.forward.forward[x]) {
    if (map[y] == kUnmapped) return VertexSet(g.n());
    nb.intersect_row(g.row(map[y]));
  }
  return nb;
}

}  // namespace detail

// Random-greedy layered embedding. The top layer is injected uniformly; each
// lower layer is processed in decreasing-defect order (ties by id) and every
// vertex lands on a uniform unused common neighbor of its placed forward
// neighbors when at least half of them are unused.
inline EmbedState random_greedy_embed(const Graph& g, const EmbedPlan& plan, std::uint64_t seed) {
  validate_plan(g, plan);
  const std::size_t n = plan.pattern.n(), layers = plan.layer_count();
  const double power = 2.0 * static_cast<double>(plan.forward.d_pad);
  EmbedState st;
  st.seed = seed;
  st.map.assign(n, kUnmapped);
  st.used = VertexSet(g.n());
  st.omega.assign(n, 0);
  st.lambda.assign(layers, 0);
  Rng rng(seed);
  auto record = [&](Placement p) {
    if (p.image != kUnmapped) {
      st.map[p.x] = p.image;
      st.used.insert(p.image);
    }
    const bool ok = p.image != kUnmapped && (p.step == Step::top || p.step == Step::fresh);
    if (!ok && st.first_failure == std::numeric_limits<std::size_t>::max()) st.first_failure = st.log.size();
    st.log.push_back(p);
  };
  if (n == 0) {
    st.success = true;
    return st;
  }

  const std::size_t top = plan.top_layer();
  {
    const auto w = plan.partition.layers[top].to_vector();
    auto v = plan.targets[top].to_vector();
    // Partial Fisher-Yates: the first |W| slots become a uniform injection.
    for (std::size_t a = 0; a < w.size(); ++a) {
      Placement p{w[a], top, Step::top, 0, v.size(), v.size() - std::min(a, v.size()), kUnmapped};
      if (a < v.size()) {
        std::swap(v[a], v[a + rng.below(v.size() - a)]);
        p.image = v[a];
      }
      record(p);
    }
  }

  for (std::size_t L = top; L-- > 0;) {
    const auto w = plan.partition.layers[L].to_vector();
    if (w.empty()) continue;
    std::vector<VertexSet> nb;
    std::vector<std::size_t> order(w.size());
    for (std::size_t a = 0; a < w.size(); ++a) {
      nb.push_back(detail::image_neighborhood(g, plan, st.map, w[a]));
      st.omega[w[a]] = defect_from_count(plan.thetas[L], nb.back().size());
      st.lambda[L] += defect_power(st.omega[w[a]], static_cast<int>(power));
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return st.omega[w[a]] > st.omega[w[b]]; });
    for (std::size_t a : order) {
      const Vertex x = w[a];
      const VertexSet& n_x = nb[a];
      const VertexSet l_x = n_x - st.used;
      Placement p{x, L, Step::fresh, st.omega[x], n_x.size(), l_x.size(), kUnmapped};
      if (n_x.empty()) {
        p.step = Step::empty;
        if (!plan.targets[L].empty()) p.image = plan.targets[L].nth(rng.below(plan.targets[L].size()));
      } else if (2 * l_x.size() < n_x.size()) {
        p.step = Step::crowded;
        p.image = n_x.nth(rng.below(n_x.size()));
      } else {
        p.image = l_x.nth(rng.below(l_x.size()));
      }
      record(p);
    }
  }
  st.success = st.first_failure == std::numeric_limits<std::size_t>::max();
  return st;
}

struct LayerCertificate {
  std::size_t layer = 0;
  std::size_t pattern_size = 0;
  double sum = 0;    // sum of omega^s (top layer: |V_top|)
  double bound = 0;  // theta_L / 2 (top layer: 2 |W_top|)
  bool precondition = true;  // theta_L >= 2 |W_L|
  bool passes = true;
};

struct Certificate {
  std::vector<LayerCertificate> layers;
  int s = 1;

  bool all_pass() const {
    return std::all_of(layers.begin(), layers.end(), [](const auto& l) { return l.passes; });
  }
};

// Success certificate: the top layer has room for an injection with half to
// spare, and every other nonempty layer has theta_L >= 2|W_L| and
// sum_x omega(x)^s <= theta_L / 2. All layers passing forces a run that only
// fired fresh placements, since the j-th vertex then sees |N| >= 2j.
inline Certificate certificate_check(const EmbedState& st, const EmbedPlan& plan, int s) {
  detail::require(s >= 1, "the certificate needs s >= 1");
  Certificate c;
  c.s = s;
  const std::size_t top = plan.top_layer();
  for (std::size_t L = 0; L < plan.layer_count(); ++L) {
    LayerCertificate lc;
    lc.layer = L;
    lc.pattern_size = plan.partition.layers[L].size();
    const double w = static_cast<double>(lc.pattern_size);
    if (lc.pattern_size == 0) {
      c.layers.push_back(lc);
      continue;
    }
    if (L == top) {
      lc.sum = static_cast<double>(plan.targets[L].size());
      lc.bound = 2 * w;
      lc.passes = lc.sum >= lc.bound;
    } else {
      plan.partition.layers[L].for_each([&](Vertex x) { lc.sum += defect_power(st.omega[x], s); });
      lc.bound = plan.thetas[L] / 2;
      lc.precondition = plan.thetas[L] >= 2 * w;
      lc.passes = lc.precondition && lc.sum <= lc.bound;
    }
    c.layers.push_back(lc);
  }
  return c;
}

// gamma = max(1, max over nonempty non-top layers of |V_L| / theta_L).
inline double plan_gamma(const EmbedPlan& plan) {
  double gamma = 1;
  const std::size_t top = plan.top_layer();
  for (std::size_t L = 0; L < top; ++L)
    if (!plan.partition.layers[L].empty())
      gamma = std::max(gamma, static_cast<double>(plan.targets[L].size()) / plan.thetas[L]);
  return gamma;
}

inline double failure_bound_formula(std::size_t d, double gamma, double mu, double layer_ratio_sum) {
  if (mu == 0) return 0;
  const double dd = static_cast<double>(d);
  return std::pow(2.0, 2 * dd + 2) * std::pow(gamma, 2 * dd) * mu * layer_ratio_sum;
}

// 2^{2D+2} gamma^{2D} mu sum_L |W_L| / theta_L over the nonempty non-top
// layers, with D the padded arity of the plan.
inline double failure_bound(const EmbedPlan& plan, double mu) {
  double ratio = 0;
  const std::size_t top = plan.top_layer();
  for (std::size_t L = 0; L < top; ++L)
    ratio += static_cast<double>(plan.partition.layers[L].size()) / plan.thetas[L];
  return failure_bound_formula(plan.forward.d_pad, plan_gamma(plan), mu, ratio);
}

struct PlanMoment {
  double value = 0;  // max over non-top pattern vertices, conservative upper when sampled
  bool exact = true;
  std::size_t signatures = 0;
  std::vector<std::pair<std::vector<std::size_t>, MomentResult>> per_signature;  // {target, factors...}
};

// max_x mu_{s,theta_L}(prod_{y in N+(x)} V_{layer(y)}; V_{layer(x)}) over the
// non-top layers. Dummy slots are universal and drop out of the product.
inline PlanMoment plan_moment(const Graph& g, const EmbedPlan& plan, int s, const EvalBudget& budget,
                              std::uint64_t seed) {
  validate_plan(g, plan);
  PlanMoment pm;
  std::map<std::vector<std::size_t>, MomentResult> cache;
  const std::size_t top = plan.top_layer();
  for (Vertex x = 0; x < plan.pattern.n(); ++x) {
    const std::size_t L = plan.partition.layer_of[x];
    if (L == top) continue;
    std::vector<std::size_t> sig{L};
    for (Vertex y : plan.forward.forward[x]) sig.push_back(plan.partition.layer_of[y]);
    std::sort(sig.begin() + 1, sig.end());
    if (cache.count(sig)) continue;
    MomentResult mr;
    if (sig.size() == 1) {
      mr.value = defect_power(defect_from_count(plan.thetas[L], plan.targets[L].size()), s);
      mr.tuples = 1;
      mr.sum = mr.value;
      mr.infinite_hits = plan.targets[L].empty() ? 1 : 0;
    } else {
      std::vector<VertexSet> factors;
      for (std::size_t a = 1; a < sig.size(); ++a) factors.push_back(plan.targets[sig[a]]);
      mr = moment(g, {plan.thetas[L], s, factors.size()}, factors, plan.targets[L], budget,
                  derive_seed(seed, {cache.size()}));
    }
    cache.emplace(sig, mr);
  }
  for (auto& [sig, mr] : cache) {
    pm.value = std::max(pm.value, mr.upper(budget.safety_sigmas));
    pm.exact = pm.exact && mr.exact();
    pm.per_signature.emplace_back(sig, mr);
  }
  pm.signatures = cache.size();
  return pm;
}

struct Verification {
  bool ok = true;
  std::string reason;  // "unmapped", "out of range", "not injective", "edge missing"
  Vertex u = 0, v = 0;  // the offending pattern vertices
};

// Independent check that map is an injective homomorphism of h into g.
inline Verification verify_embedding(const Graph& h, const Graph& g, const std::vector<Vertex>& map) {
  Verification out;
  auto fail = [&](std::string why, Vertex a, Vertex b) {
    out.ok = false;
    out.reason = std::move(why);
    out.u = a;
    out.v = b;
    return out;
  };
  if (map.size() != h.n()) return fail("map size differs from the pattern", 0, 0);
  std::vector<Vertex> owner(g.n(), kUnmapped);
  for (Vertex x = 0; x < h.n(); ++x) {
    if (map[x] == kUnmapped) return fail("unmapped", x, x);
    if (map[x] >= g.n()) return fail("out of range", x, x);
    if (owner[map[x]] != kUnmapped) return fail("not injective", owner[map[x]], x);
    owner[map[x]] = x;
  }
  for (const auto& [a, b] : h.edges())
    if (!g.adjacent(map[a], map[b])) return fail("edge missing", a, b);
  return out;
}

struct OneSideOutcome {
  bool success = false;
  std::vector<Vertex> map;
  DrcOutcome drc;
  std::size_t attempts = 0;     // injections of W2 drawn
  double best_sum = kInfinity;  // smallest sum_v omega(phi(e_v)) seen
  double threshold = 0;         // |W1|
  std::size_t feasibility_violations = 0;  // steps with omega != 0 and |N| < i
  std::vector<Vertex> order;    // W1 in extension order
  std::string failure;
};

// Bipartite embedding with one side of bounded degree: dependent random
// choice gives A in v2 with low first moment into v1; a uniform injection
// of W2 into A with sum of defects at most |W1| is redrawn until found, then
// W1 is placed greedily in decreasing-defect order.
inline OneSideOutcome embed_one_side_bounded(const Graph& g, const VertexSet& v1, const VertexSet& v2, const Graph& h,
                                             const VertexSet& w1, const VertexSet& w2, double eps, DrcParams p,
                                             std::uint64_t seed) {
  detail::require(eps > 0, "eps must be positive");
  detail::require(v1.disjoint_from(v2) && w1.disjoint_from(w2), "sides must be disjoint");
  detail::require((w1 | w2).size() == h.n(), "W1 and W2 must cover the pattern");
  detail::require(w1.size() > 0 && w2.size() > 0, "both pattern sides must be nonempty");
  for (const auto& [a, b] : h.edges())
    detail::require(w1.contains(a) != w1.contains(b), "pattern edges must cross W1-W2");
  const std::size_t d = p.d, n1 = w1.size(), n2 = w2.size();
  detail::require(d >= 1, "d must be at least 1");
  detail::require(n2 >= d, "|W2| < d leaves the falling-factorial ratio undefined");
  w1.for_each([&](Vertex x) { detail::require(h.degree_in(x, w2) <= d, "a W1 vertex has more than d neighbors"); });
  const double alpha = p.alpha, dd = static_cast<double>(d);
  const double e = static_cast<double>(g.edges_between(v1, v2));
  detail::require(e >= alpha * static_cast<double>(v1.size()) * static_cast<double>(v2.size()),
                  "host density between V1 and V2 is below alpha");
  detail::require(static_cast<double>(v1.size()) >= (1 + eps) * std::pow(alpha, -dd) * static_cast<double>(n1),
                  "|V1| < (1+eps) alpha^{-d} |W1|");
  detail::require(static_cast<double>(v2.size()) >=
                      std::pow((1 + eps) / eps, 1 / dd) * std::pow(alpha, -2.0) * static_cast<double>(n2),
                  "|V2| < ((1+eps)/eps)^{1/d} alpha^{-2} |W2|");
  double falling = 1;
  for (std::size_t a = 0; a < d; ++a) falling *= static_cast<double>(n2 - a) / static_cast<double>(n2);
  detail::require(1 / falling <= (1 + eps) * (1 + 1e-12), "|W2|^d over the falling factorial exceeds 1 + eps");

  OneSideOutcome out;
  out.threshold = static_cast<double>(n1);
  p.t = 2;
  p.s = 1;
  p.eta = 1 / (1 + eps);
  p.eps = eps / (1 + eps);
  p.theta = out.threshold;
  out.drc = drc_bipartite(g, v1, v2, p, derive_seed(seed, {0}));
  if (!out.drc.success) {
    out.failure = "dependent random choice: " + out.drc.failure;
    return out;
  }
  const VertexSet& a = out.drc.sets[0];
  const auto a_list = a.to_vector();
  const auto w2_list = w2.to_vector(), w1_list = w1.to_vector();
  if (a_list.size() < n2) {
    out.failure = "A is smaller than W2";
    return out;
  }

  // e_v: the neighbors of v, then the smallest-id non-neighbors in W2 (the
  // added edges that bring every W1 vertex to degree exactly d).
  std::vector<VertexTuple> e_v(h.n());
  for (Vertex x : w1_list) {
    e_v[x] = h.neighbors(x).to_vector();
    for (Vertex y : w2_list) {
      if (e_v[x].size() == d) break;
      if (!h.adjacent(x, y)) e_v[x].push_back(y);
    }
  }

  std::vector<Vertex> phi(h.n(), kUnmapped);
  std::vector<double> omega(h.n(), 0);
  bool found = false;
  for (std::size_t attempt = 0; attempt < p.max_restarts && !found; ++attempt) {
    Rng rng(derive_seed(seed, {1, attempt}));
    auto pool = a_list;
    std::vector<Vertex> trial(h.n(), kUnmapped);
    for (std::size_t i = 0; i < n2; ++i) {
      std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
      trial[w2_list[i]] = pool[i];
    }
    double sum = 0;
    std::vector<double> om(h.n(), 0);
    for (Vertex x : w1_list) {
      VertexTuple q;
      for (Vertex y : e_v[x]) q.push_back(trial[y]);
      om[x] = defect(g, out.threshold, q, v1);
      sum += om[x];
    }
    out.attempts = attempt + 1;
    out.best_sum = std::min(out.best_sum, sum);
    if (sum <= out.threshold) {
      found = true;
      phi = std::move(trial);
      omega = std::move(om);
    }
  }
  if (!found) {
    out.failure = "no injection with sum of defects <= |W1| in " + std::to_string(p.max_restarts) + " draws";
    return out;
  }

  out.order = w1_list;
  std::stable_sort(out.order.begin(), out.order.end(), [&](Vertex x, Vertex y) { return omega[x] > omega[y]; });
  Rng rng(derive_seed(seed, {2}));
  VertexSet used(g.n());
  for (std::size_t i = 0; i < out.order.size(); ++i) {
    const Vertex x = out.order[i];
    VertexTuple q;
    for (Vertex y : e_v[x]) q.push_back(phi[y]);
    const VertexSet nb = common_neighbors(g, q, v1);
    if (omega[x] != 0 && nb.size() < i + 1) ++out.feasibility_violations;
    const VertexSet free = nb - used;
    if (free.empty()) {
      out.failure = "greedy extension ran out of candidates at step " + std::to_string(i + 1);
      return out;
    }
    phi[x] = free.nth(rng.below(free.size()));
    used.insert(phi[x]);
  }
  out.map = std::move(phi);
  const auto check = verify_embedding(h, g, out.map);
  out.success = check.ok;
  if (!check.ok) out.failure = "verification failed: " + check.reason;
  return out;
}

}  // namespace ramsey
