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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/defect.hpp"
#include "ramsey/drc.hpp"
#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

// Per-vertex concentration sum_{Q : v in Q in dom^d} omega_theta(Q; target)^s
// for every v in dom. Exact below the budget; above it, one shared sample of
// uniform tuples gives an unbiased estimate |dom|^d * mean(omega^s [v in Q])
// with its standard error.
struct Concentration {
  std::vector<double> sum;    // indexed by vertex id
  std::vector<double> error;  // 0 when exact
  bool exact = true;
  std::uint64_t seed = 0;

  double upper(Vertex v, double sigmas) const { return sum[v] + sigmas * error[v]; }
};

inline Concentration concentration(const Graph& g, const VertexSet& dom, const VertexSet& target, std::size_t d,
                                   int s, double theta, const EvalBudget& budget, std::uint64_t seed) {
  Concentration c;
  c.sum.assign(g.n(), 0);
  c.error.assign(g.n(), 0);
  const std::vector<VertexSet> factors(d, dom);
  const double total = product_size(factors);
  if (total == 0) return c;
  if (total <= budget.exact_limit) {
    const auto table = detail::power_table(theta, s, target.size());
    detail::enumerate_products(g, factors, target, [&](std::span<const Vertex> q, std::size_t cnt) {
      for (std::size_t a = 0; a < q.size(); ++a) {
        if (std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(a), q[a]) != q.begin() + static_cast<std::ptrdiff_t>(a))
          continue;
        c.sum[q[a]] += table[cnt];
      }
    });
    return c;
  }
  c.exact = false;
  c.seed = seed;
  const auto pool = dom.to_vector();
  const std::size_t n = budget.samples;
  std::vector<double> sy(g.n(), 0), syy(g.n(), 0);
  Rng rng(seed);
  VertexTuple q(d);
  for (std::size_t k = 0; k < n; ++k) {
    for (auto& v : q) v = pool[rng.below(pool.size())];
    const double x = defect_power(defect_from_count(theta, common_neighbor_count(g, q, target)), s);
    for (std::size_t a = 0; a < d; ++a) {
      if (std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(a), q[a]) != q.begin() + static_cast<std::ptrdiff_t>(a))
        continue;
      sy[q[a]] += x;
      syy[q[a]] += x * x;
    }
  }
  const double dn = static_cast<double>(n);
  for (Vertex v : pool) {
    const double mean = sy[v] / dn;
    const double var = n > 1 ? std::max(0.0, (syy[v] - dn * mean * mean) / (dn - 1)) : kInfinity;
    c.sum[v] = total * mean;
    c.error[v] = std::isfinite(mean) ? total * std::sqrt(var / dn) : kInfinity;
  }
  return c;
}

struct PruneOutcome {
  bool success = false;
  std::vector<VertexSet> sets;           // B_j
  VertexSet removed;                     // union of the R_i
  std::vector<std::size_t> removed_per;  // |R_i|
  std::vector<Guarantee> guarantees;
  std::string failure;
};

// Concentration pruning: drop every vertex carrying at least
// |A_-i|^{d-5/8} of the omega^s mass of A_-i^d into some A_i, then measure the
// three conclusions on the survivors.
inline PruneOutcome remove_concentrated(const Graph& g, const std::vector<VertexSet>& a, std::size_t d, int s,
                                        double theta, const EvalBudget& budget, std::uint64_t seed) {
  const std::size_t r = a.size();
  detail::require(r >= 2, "concentration pruning needs at least two sets");
  detail::require(d >= 1 && s >= 0 && static_cast<std::size_t>(s) >= 4 * d, "concentration pruning needs s >= 4d");
  detail::require(theta > 0, "theta must be positive");
  const double dd = static_cast<double>(d), sig = budget.safety_sigmas;
  PruneOutcome out;
  out.removed = VertexSet(g.n());
  std::vector<MomentResult> before(r);
  for (std::size_t i = 0; i < r; ++i) {
    const VertexSet rest = detail::union_except(a, i);
    before[i] = moment_power(g, {theta, s, d}, rest, a[i], budget, derive_seed(seed, {1, i}));
    out.guarantees.push_back(moment_at_most("precondition mu_s(A_-" + std::to_string(i + 1) + "^d; A_" +
                                                std::to_string(i + 1) + ") < 1",
                                            before[i], std::nextafter(1.0, 0.0), sig));
    const auto conc = concentration(g, rest, a[i], d, s, theta, budget, derive_seed(seed, {2, i}));
    const double cut = std::pow(static_cast<double>(rest.size()), dd - 0.625);
    std::size_t removed_here = 0;
    rest.for_each([&](Vertex v) {
      if (conc.upper(v, sig) >= cut) {
        out.removed.insert(v);
        ++removed_here;
      }
    });
    out.removed_per.push_back(removed_here);
  }
  out.sets = a;
  for (auto& b : out.sets) b -= out.removed;
  for (std::size_t j = 0; j < r; ++j) {
    const std::string J = std::to_string(j + 1);
    out.guarantees.push_back(
        size_at_least("|B_" + J + "|", out.sets[j].size(), std::pow(2.0, -1 / (2 * dd)) * static_cast<double>(a[j].size())));
    const VertexSet rest = detail::union_except(out.sets, j);
    const auto after = moment_power(g, {theta, s, d}, rest, out.sets[j], budget, derive_seed(seed, {3, j}));
    out.guarantees.push_back(moment_at_most("mu_s(B_-" + J + "^d; B_" + J + ") <= 2 mu_s(A_-" + J + "^d; A_" + J + ")",
                                            after, 2 * before[j].upper(sig), sig));
    const auto conc = concentration(g, rest, out.sets[j], d, s, theta, budget, derive_seed(seed, {4, j}));
    double worst = 0;
    rest.for_each([&](Vertex v) { worst = std::max(worst, conc.upper(v, sig)); });
    out.guarantees.push_back(value_at_most("max_v concentration into B_" + J, worst,
                                           2 * std::pow(static_cast<double>(rest.size()), dd - 0.625)));
  }
  out.success = all_hold(out.guarantees);
  if (!out.success) out.failure = "pruning conclusions not met";
  return out;
}

struct PartitionParams {
  std::vector<double> p;  // p_1..p_k
  double theta = 1;
  double eps = 0.5;
  double eps_prime = 0.5;
  int s = 1;
  std::size_t d = 1;
  std::size_t max_restarts = 50;
  std::size_t e1_samples = 100000;  // tuples per color j
  double e1_tolerance = 0;          // allowed fraction of E1-violating sampled tuples per (i, j)
  std::size_t e2_cap = 256;         // product sets checked per draw
  // Product sets the caller needs (e.g. the embedding plan's signatures):
  // {target flat index, factor flat indices...}.
  std::vector<std::vector<std::size_t>> e2_required;
  EvalBudget budget;

  double q(std::size_t i, std::size_t r) const { return p[i] / static_cast<double>(r); }
  double theta_i(std::size_t i, std::size_t r) const { return p[i] * theta / (2 * static_cast<double>(r)); }
};

struct PartitionOutcome {
  bool success = false;
  std::size_t k = 0;
  std::size_t r = 0;
  std::vector<VertexSet> sets;  // V_i^{(j)} at flat index i*r + j
  std::vector<double> theta_i;
  std::uint64_t seed = 0;
  std::size_t restart = 0;   // index of the accepted (or last) draw
  std::size_t restarts = 0;  // draws consumed
  bool e1 = false, e2 = false, e3 = false;
  bool p_floor_met = false;  // p_i >= m^{-1/(10d)}, reported only
  std::size_t e1_samples = 0;
  double e1_worst_fraction = 0;
  std::size_t dominance_checked = 0;
  std::size_t dominance_violations = 0;
  std::array<std::size_t, 3> event_failures{};  // draws rejected first by E1, E2, E3
  std::vector<Guarantee> guarantees;   // E2 and E3 measurements of the reported draw
  std::vector<Guarantee> conclusions;  // mu_{s,theta_i}(prod V; V_i^{(j)}) on the checked product sets
  std::string failure;
};

// Vertex v gets color (i, j) with probability q_i = p_i / r, decided by a
// counter-based draw keyed on (draw seed, v).
inline std::vector<VertexSet> color_vertices(const std::vector<VertexSet>& b, const std::vector<double>& p,
                                             std::uint64_t draw_seed) {
  const std::size_t r = b.size(), k = p.size(), n = b.front().universe();
  std::vector<VertexSet> v(k * r, VertexSet(n));
  VertexSet any(n);
  for (const auto& s : b) any |= s;
  any.for_each([&](Vertex x) {
    const double u = hash_unit(draw_seed, x);
    double acc = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        acc += p[i] / static_cast<double>(r);
        if (u < acc) {
          if (b[j].contains(x)) v[i * r + j].insert(x);
          return;
        }
      }
  });
  return v;
}

namespace detail {

inline void multisets(std::size_t items, std::size_t size, std::size_t from, std::vector<std::size_t>& cur,
                      std::vector<std::vector<std::size_t>>& out, std::size_t cap) {
  if (out.size() > cap) return;
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (std::size_t x = from; x < items; ++x) {
    cur.push_back(x);
    multisets(items, size, x, cur, out, cap);
    cur.pop_back();
  }
}

// Product sets to check: {target flat index, sorted factor flat indices}.
inline std::vector<std::vector<std::size_t>> partition_combos(std::size_t k, std::size_t r, std::size_t d,
                                                              const PartitionParams& pp, Rng& rng) {
  std::set<std::vector<std::size_t>> chosen;
  for (auto c : pp.e2_required) {
    require(c.size() >= 2 && c[0] < k * r, "malformed required product set");
    std::sort(c.begin() + 1, c.end());
    chosen.insert(c);
  }
  std::vector<std::vector<std::size_t>> all;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::size_t> others;
    for (std::size_t f = 0; f < k * r; ++f)
      if (f % r != j) others.push_back(f);
    std::vector<std::vector<std::size_t>> ms;
    std::vector<std::size_t> cur;
    multisets(others.size(), d, 0, cur, ms, pp.e2_cap * 4 + 16);
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& m : ms) {
        std::vector<std::size_t> c{i * r + j};
        for (std::size_t x : m) c.push_back(others[x]);
        all.push_back(std::move(c));
        if (all.size() > pp.e2_cap * 4 + 16) break;
      }
  }
  if (all.size() + chosen.size() <= pp.e2_cap) {
    chosen.insert(all.begin(), all.end());
  } else {
    // Uniform tuples of factor layers, sorted into multisets.
    for (std::size_t tries = 0; chosen.size() < pp.e2_cap && tries < 20 * pp.e2_cap; ++tries) {
      const std::size_t target = rng.below(k * r);
      std::vector<std::size_t> c{target};
      for (std::size_t a = 0; a < d; ++a) {
        std::size_t f;
        do f = rng.below(k * r);
        while (f % r == target % r);
        c.push_back(f);
      }
      std::sort(c.begin() + 1, c.end());
      chosen.insert(std::move(c));
    }
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace detail

// Random [k] x [r] partition of the sets b into the host layers, redrawn
// until E1 (sampled common-neighborhood retention), E2 (moment bounds on the
// checked product sets) and E3 (size windows) all hold.
inline PartitionOutcome random_partition(const Graph& g, const std::vector<VertexSet>& b, std::size_t k,
                                         const PartitionParams& pp, std::uint64_t seed) {
  const std::size_t r = b.size();
  detail::require(r >= 1 && k >= 1, "need at least one color and one level");
  detail::require(pp.p.size() == k, "p schedule must have k entries");
  double psum = 0;
  for (double x : pp.p) {
    detail::require(x > 0, "p_i must be positive");
    psum += x;
  }
  detail::require(psum <= 1 + 1e-9, "p_i must sum to at most 1");
  detail::require(pp.d >= 1 && pp.s >= 0 && pp.theta > 0, "invalid d, s or theta");
  const double dd = static_cast<double>(pp.d), sig = pp.budget.safety_sigmas;
  const double factor = r == 2 ? 1.0 : std::pow(static_cast<double>(r), dd) * std::pow(pp.eps, -dd);

  PartitionOutcome out;
  out.k = k;
  out.r = r;
  out.seed = seed;
  for (std::size_t i = 0; i < k; ++i) out.theta_i.push_back(pp.theta_i(i, r));
  std::size_t msize = 0;
  for (const auto& s : b) msize = std::max(msize, s.size());
  out.p_floor_met = std::all_of(pp.p.begin(), pp.p.end(), [&](double x) {
    return x >= std::pow(static_cast<double>(msize), -1 / (10 * dd));
  });

  // Baselines mu_{s,theta}(B_-j^d; B_j).
  std::vector<MomentResult> base(r);
  for (std::size_t j = 0; j < r; ++j)
    if (r > 1)
      base[j] = moment_power(g, {pp.theta, pp.s, pp.d}, detail::union_except(b, j), b[j], pp.budget,
                             derive_seed(seed, {0, j}));

  for (std::size_t restart = 0; restart < pp.max_restarts; ++restart) {
    const std::uint64_t ds = derive_seed(seed, {1, restart});
    out.restart = restart;
    out.restarts = restart + 1;
    out.sets = color_vertices(b, pp.p, ds);
    out.guarantees.clear();
    out.conclusions.clear();

    // E3: 2^{-1/(2d)} q_i |B_j| <= |V_i^{(j)}| <= 2 q_i |B_j|.
    out.e3 = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const double want = pp.q(i, r) * static_cast<double>(b[j].size());
        const std::size_t got = out.sets[i * r + j].size();
        const std::string L = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        auto lo = size_at_least("E3 |V" + L + "| lower", got, std::pow(2.0, -1 / (2 * dd)) * want);
        auto hi = value_at_most("E3 |V" + L + "| upper", static_cast<double>(got), 2 * want);
        out.e3 = out.e3 && lo.holds && hi.holds;
        out.guarantees.push_back(std::move(lo));
        out.guarantees.push_back(std::move(hi));
      }

    // E1 on sampled tuples of B_-j^d, plus defect dominance on the tuples where it holds.
    out.e1 = true;
    out.e1_worst_fraction = 0;
    out.e1_samples = 0;
    out.dominance_checked = out.dominance_violations = 0;
    if (out.e3 && r > 1) {
      Rng rng(derive_seed(ds, {1}));
      for (std::size_t j = 0; j < r; ++j) {
        const auto pool = detail::union_except(b, j).to_vector();
        if (pool.empty()) continue;
        std::vector<std::size_t> bad(k, 0);
        VertexTuple q(pp.d);
        for (std::size_t n = 0; n < pp.e1_samples; ++n) {
          for (auto& v : q) v = pool[rng.below(pool.size())];
          const VertexSet nb = common_neighbors(g, q, b[j]);
          const std::size_t cb = nb.size();
          for (std::size_t i = 0; i < k; ++i) {
            const std::size_t cv = nb.count_and(out.sets[i * r + j]);
            if (static_cast<double>(cv) < 0.5 * pp.q(i, r) * static_cast<double>(cb)) {
              ++bad[i];
              continue;
            }
            ++out.dominance_checked;
            if (defect_from_count(out.theta_i[i], cv) > defect_from_count(pp.theta, cb)) ++out.dominance_violations;
          }
        }
        out.e1_samples += pp.e1_samples;
        for (std::size_t i = 0; i < k; ++i) {
          const double frac = static_cast<double>(bad[i]) / static_cast<double>(pp.e1_samples);
          out.e1_worst_fraction = std::max(out.e1_worst_fraction, frac);
          if (frac > pp.e1_tolerance) out.e1 = false;
        }
      }
    }

    // E2 on the chosen product sets, plus the resulting per-layer conclusion.
    out.e2 = true;
    if (out.e3 && out.e1 && r > 1) {
      Rng rng(derive_seed(ds, {2}));
      std::map<std::vector<std::size_t>, bool> e2_done;
      std::uint64_t idx = 0;
      for (const auto& c : detail::partition_combos(k, r, pp.d, pp, rng)) {
        const std::size_t target = c[0], i = target / r, j = target % r;
        std::vector<VertexSet> factors;
        for (std::size_t a = 1; a < c.size(); ++a) factors.push_back(out.sets[c[a]]);
        std::string name = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") <- {";
        for (std::size_t a = 1; a < c.size(); ++a)
          name += (a > 1 ? "," : "") + std::string("(") + std::to_string(c[a] / r + 1) + "," +
                  std::to_string(c[a] % r + 1) + ")";
        name += "}";
        std::vector<std::size_t> key(c.begin() + 1, c.end());
        key.push_back(j);
        const DefectParams dp{pp.theta, pp.s, factors.size()};
        if (!e2_done.count(key)) {
          const auto mu = moment(g, dp, factors, b[j], pp.budget, derive_seed(ds, {3, idx++}));
          auto gg = moment_at_most("E2 " + name.substr(name.find('{')) + " -> B_" + std::to_string(j + 1), mu,
                                   std::max(pp.eps_prime, 4 * factor * base[j].upper(sig)), sig);
          e2_done[key] = gg.holds;
          out.e2 = out.e2 && gg.holds;
          out.guarantees.push_back(std::move(gg));
        }
        const auto conc = moment(g, {out.theta_i[i], pp.s, factors.size()}, factors, out.sets[target], pp.budget,
                                 derive_seed(ds, {4, idx++}));
        out.conclusions.push_back(moment_at_most("mu_{s,theta_i} " + name, conc,
                                                 std::max(pp.eps_prime, 8 * factor * base[j].upper(sig)), sig));
      }
    }

    if (out.e1 && out.e2 && out.e3) {
      out.success = true;
      out.failure.clear();
      return out;
    }
    ++out.event_failures[!out.e3 ? 2 : !out.e1 ? 0 : 1];
  }
  const auto worst = std::max_element(out.event_failures.begin(), out.event_failures.end());
  out.failure = "E" + std::to_string(worst - out.event_failures.begin() + 1) + " failed persistently over " +
                std::to_string(pp.max_restarts) + " draws";
  return out;
}

}  // namespace ramsey
