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
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

// G(n, p): each pair {u < v} in lexicographic order gets one Bernoulli draw.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  detail::require(p >= 0 && p <= 1, "edge probability must lie in [0, 1]");
  Graph g(n);
  Rng rng(seed);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

// Uniform two-coloring of K_m.
inline TwoColoring random_coloring(std::size_t m, std::uint64_t seed) {
  return TwoColoring(random_graph(m, 0.5, seed));
}

namespace detail {

// k distinct uniform picks from pool (partial Fisher-Yates), in draw order.
inline std::vector<Vertex> sample_without_replacement(std::vector<Vertex> pool, std::size_t k, Rng& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace detail

// Incremental back-edge model: vertex v joins min(d, v) uniformly chosen
// earlier vertices. Reversing the insertion order peels every vertex with at
// most d remaining neighbors, so the result is d-degenerate.
inline Graph random_degenerate(std::size_t n, std::size_t d, std::uint64_t seed) {
  Graph g(n);
  Rng rng(seed);
  std::vector<Vertex> earlier;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : detail::sample_without_replacement(earlier, d, rng)) g.add_edge(u, v);
    earlier.push_back(v);
  }
  return g;
}

// Bipartite variant: each vertex gets a uniform side and up to d back-edges
// into earlier vertices of the other side.
inline Graph random_degenerate_bipartite(std::size_t n, std::size_t d, std::uint64_t seed) {
  Graph g(n);
  Rng rng(seed);
  std::vector<Vertex> side[2];
  for (Vertex v = 0; v < n; ++v) {
    const int s = v < 2 ? static_cast<int>(v) : static_cast<int>(rng.below(2));
    for (Vertex u : detail::sample_without_replacement(side[1 - s], d, rng)) g.add_edge(u, v);
    side[s].push_back(v);
  }
  return g;
}

// Random bipartite host: v1 = {0..n1-1}, v2 = {n1..n1+n2-1}.
inline Graph random_bipartite(std::size_t n1, std::size_t n2, double p, std::uint64_t seed) {
  detail::require(p >= 0 && p <= 1, "edge probability must lie in [0, 1]");
  Graph g(n1 + n2);
  Rng rng(seed);
  for (Vertex u = 0; u < n1; ++u)
    for (Vertex v = 0; v < n2; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, static_cast<Vertex>(n1 + v));
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// K_{a,b} with sides {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) g.add_edge(u, static_cast<Vertex>(a + v));
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  detail::require(n >= 3, "cycle needs at least 3 vertices");
  Graph g = path_graph(n);
  g.add_edge(static_cast<Vertex>(n - 1), 0);
  return g;
}

// K_{1,leaves} with center 0.
inline Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

// Q_k: vertices are k-bit strings, edges join strings at Hamming distance 1.
inline Graph hypercube(std::size_t k) {
  const std::size_t n = std::size_t{1} << k;
  Graph g(n);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t b = 0; b < k; ++b) {
      const auto u = static_cast<Vertex>(v ^ (std::size_t{1} << b));
      if (v < u) g.add_edge(v, u);
    }
  return g;
}

}  // namespace ramsey
