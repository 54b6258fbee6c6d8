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

// Brute-force reference implementations. They share no code with the
// library beyond Graph::edges(): adjacency is rebuilt as plain sets and every
// quantity is recomputed from its definition.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "ramsey/graph.hpp"

namespace oracle {

using Adj = std::vector<std::set<unsigned>>;

inline Adj adjacency(const ramsey::Graph& g) {
  Adj adj(g.n());
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  return adj;
}

inline std::vector<unsigned> members(const ramsey::VertexSet& s) {
  std::vector<unsigned> out;
  for (unsigned v = 0; v < s.universe(); ++v)
    if (s.contains(v)) out.push_back(v);
  return out;
}

inline std::vector<unsigned> common(const Adj& adj, const std::vector<unsigned>& q, const std::vector<unsigned>& t) {
  std::vector<unsigned> out;
  for (unsigned x : t) {
    bool all = true;
    for (unsigned v : q) all = all && adj[v].count(x) > 0;
    if (all) out.push_back(x);
  }
  return out;
}

inline double omega(double theta, std::size_t c) {
  if (c >= theta) return 0;
  if (c == 0) return std::numeric_limits<double>::infinity();
  return theta / static_cast<double>(c);
}

inline double omega_pow(double w, int s) {
  if (s == 0) return w > 0 ? 1.0 : 0.0;
  if (w == 0) return 0;
  return std::pow(w, s);
}

// Odometer over the product of lists, last coordinate fastest.
template <class F>
void for_each_tuple(const std::vector<std::vector<unsigned>>& lists, F&& f) {
  for (const auto& l : lists)
    if (l.empty()) return;
  std::vector<std::size_t> idx(lists.size(), 0);
  std::vector<unsigned> q(lists.size());
  while (true) {
    for (std::size_t k = 0; k < lists.size(); ++k) q[k] = lists[k][idx[k]];
    f(q);
    std::size_t k = lists.size();
    while (k > 0) {
      --k;
      if (++idx[k] < lists[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (lists.empty()) return;
  }
}

struct Moment {
  double value = 0;
  double sum = 0;
  double repeated_sum = 0;
  std::size_t tuples = 0;
  std::size_t empty = 0;
};

inline Moment moment(const Adj& adj, double theta, int s, const std::vector<std::vector<unsigned>>& factors,
                     const std::vector<unsigned>& t) {
  Moment m;
  for_each_tuple(factors, [&](const std::vector<unsigned>& q) {
    const std::size_t c = common(adj, q, t).size();
    const double x = omega_pow(omega(theta, c), s);
    m.sum += x;
    ++m.tuples;
    if (c == 0) ++m.empty;
    std::set<unsigned> distinct(q.begin(), q.end());
    if (distinct.size() < q.size()) m.repeated_sum += x;
  });
  if (m.tuples > 0) m.value = m.sum / static_cast<double>(m.tuples);
  return m;
}

// Degeneracy as max over subgraphs of min degree, via naive peeling.
inline std::size_t degeneracy(const Adj& adj) {
  std::vector<bool> alive(adj.size(), true);
  std::size_t best = 0;
  for (std::size_t step = 0; step < adj.size(); ++step) {
    std::size_t arg = adj.size(), low = std::numeric_limits<std::size_t>::max();
    for (unsigned v = 0; v < adj.size(); ++v) {
      if (!alive[v]) continue;
      std::size_t deg = 0;
      for (unsigned u : adj[v]) deg += alive[u] ? 1 : 0;
      if (deg < low) low = deg, arg = v;
    }
    best = std::max(best, low);
    alive[arg] = false;
  }
  return best;
}

// Exhaustive injective-homomorphism search over all permutations of
// candidate images; only for very small patterns.
inline bool contains(const Adj& host, const Adj& pattern) {
  const std::size_t n = pattern.size();
  if (n > host.size()) return false;
  std::vector<unsigned> img(n);
  std::vector<bool> used(host.size(), false);
  auto rec = [&](auto&& self, std::size_t x) -> bool {
    if (x == n) return true;
    for (unsigned y = 0; y < host.size(); ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (unsigned p : pattern[x])
        if (p < x && !host[y].count(img[p])) ok = false;
      if (!ok) continue;
      used[y] = true;
      img[x] = y;
      if (self(self, x + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace oracle
