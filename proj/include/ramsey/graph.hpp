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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/error.hpp"
#include "ramsey/vertex_set.hpp"

namespace ramsey {

// Ordered vertex tuple; repetitions allowed.
using VertexTuple = std::vector<Vertex>;

// Undirected simple graph. Adjacency rows are fixed-width bit vectors laid
// out back to back in one buffer so common-neighborhood intersection is a
// word-wise AND over contiguous memory.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), stride_(words_for(n)), bits_(n * stride_, 0) {}

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return edges_; }
  std::size_t stride() const { return stride_; }

  void add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    detail::require(u != v, "self-loop " + std::to_string(u));
    if (adjacent(u, v)) return;
    set_bit(u, v);
    set_bit(v, u);
    ++edges_;
  }

  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[u * stride_ + v / kWordBits] >> (v % kWordBits)) & 1U;
  }

  std::span<const Word> row(Vertex v) const { return {bits_.data() + v * stride_, stride_}; }

  VertexSet neighbors(Vertex v) const {
    check(v);
    VertexSet s(n_);
    std::copy(row(v).begin(), row(v).end(), s.words().begin());
    return s;
  }

  std::size_t degree(Vertex v) const {
    std::size_t c = 0;
    for (Word w : row(v)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::size_t degree_in(Vertex v, const VertexSet& t) const {
    std::size_t c = 0;
    const auto r = row(v);
    const auto w = t.words();
    for (std::size_t i = 0; i < stride_; ++i) c += static_cast<std::size_t>(std::popcount(r[i] & w[i]));
    return c;
  }

  // Number of (x, y) pairs with x in a, y in b, x ~ y. Each edge inside
  // a ∩ b is counted twice, as in e(X, Y).
  std::size_t edges_between(const VertexSet& a, const VertexSet& b) const {
    std::size_t c = 0;
    a.for_each([&](Vertex x) { c += degree_in(x, b); });
    return c;
  }

  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < n_; ++u)
      neighbors(u).for_each([&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  Graph complement() const {
    Graph g(n_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v)
        if (!adjacent(u, v)) g.add_edge(u, v);
    return g;
  }

  // Subgraph induced on keep, relabelled to 0..|keep|-1 in increasing id order.
  Graph induced(const VertexSet& keep) const {
    const auto ids = keep.to_vector();
    Graph g(ids.size());
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        if (adjacent(ids[a], ids[b])) g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    return g;
  }

  void check(Vertex v) const {
    detail::require(v < n_, "vertex id " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  void set_bit(Vertex u, Vertex v) { bits_[u * stride_ + v / kWordBits] |= Word{1} << (v % kWordBits); }

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::size_t edges_ = 0;
  std::vector<Word> bits_;
};

// Two-coloring of the edges of K_m. Only the red graph is stored; blue is its
// complement.
struct TwoColoring {
  std::size_t m = 0;
  Graph red;

  TwoColoring() = default;
  explicit TwoColoring(Graph r) : m(r.n()), red(std::move(r)) {}

  bool is_red(Vertex u, Vertex v) const { return u != v && red.adjacent(u, v); }
  bool is_blue(Vertex u, Vertex v) const { return u != v && !red.adjacent(u, v); }
  Graph blue() const { return red.complement(); }
  // color 0 is red, 1 is blue.
  Graph color(int c) const { return c == 0 ? red : blue(); }
};

// N(q; t): vertices of t adjacent to every entry of q. N((); t) = t.
inline VertexSet common_neighbors(const Graph& g, std::span<const Vertex> q, const VertexSet& t) {
  detail::require(t.universe() == g.n(), "vertex set universe does not match graph");
  for (Vertex v : q) g.check(v);
  VertexSet out = t;
  for (Vertex v : q) out.intersect_row(g.row(v));
  return out;
}

// |N(q; t)| without materializing the set.
inline std::size_t common_neighbor_count(const Graph& g, std::span<const Vertex> q, const VertexSet& t) {
  if (q.empty()) return t.size();
  const auto tw = t.words();
  std::size_t c = 0;
  for (std::size_t i = 0; i < g.stride(); ++i) {
    Word w = tw[i];
    for (Vertex v : q) w &= g.row(v)[i];
    c += static_cast<std::size_t>(std::popcount(w));
  }
  return c;
}

struct Degeneracy {
  std::size_t d = 0;
  std::vector<Vertex> ordering;  // peeling order
};

// Matula-Beck bucket peeling. Ties among minimum-degree vertices go to the
// smallest id, so the ordering is canonical.
inline Degeneracy degeneracy(const Graph& h) {
  const std::size_t n = h.n();
  Degeneracy out;
  out.ordering.reserve(n);
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) max_deg = std::max(max_deg, deg[v] = h.degree(v));
  std::vector<VertexSet> bucket(max_deg + 1, VertexSet(n));
  for (Vertex v = 0; v < n; ++v) bucket[deg[v]].insert(v);
  std::vector<bool> removed(n, false);
  std::size_t low = 0;
  for (std::size_t step = 0; step < n; ++step) {
    while (bucket[low].empty()) ++low;
    const Vertex v = bucket[low].nth(0);
    bucket[low].erase(v);
    removed[v] = true;
    out.d = std::max(out.d, low);
    out.ordering.push_back(v);
    h.neighbors(v).for_each([&](Vertex u) {
      if (removed[u]) return;
      bucket[deg[u]].erase(u);
      bucket[--deg[u]].insert(u);
    });
    if (low > 0) --low;
  }
  return out;
}

// Greedy proper coloring in reverse peeling order: each vertex sees at most d
// colored neighbors, so at most d+1 colors are used.
inline std::vector<int> greedy_color(const Graph& h, std::span<const Vertex> ordering) {
  detail::require(ordering.size() == h.n(), "ordering must list every vertex once");
  std::vector<int> color(h.n(), -1);
  std::vector<char> taken;
  for (auto it = ordering.rbegin(); it != ordering.rend(); ++it) {
    const Vertex v = *it;
    h.check(v);
    detail::require(color[v] == -1, "ordering repeats a vertex");
    taken.assign(h.degree(v) + 1, 0);
    h.neighbors(v).for_each([&](Vertex u) {
      if (color[u] >= 0 && static_cast<std::size_t>(color[u]) < taken.size()) taken[color[u]] = 1;
    });
    int c = 0;
    while (taken[c]) ++c;
    color[v] = c;
  }
  return color;
}

inline int color_count(std::span<const int> color) {
  int r = 0;
  for (int c : color) r = std::max(r, c + 1);
  return r;
}

inline bool is_proper_coloring(const Graph& h, std::span<const int> color) {
  if (color.size() != h.n()) return false;
  for (int c : color)
    if (c < 0) return false;
  for (auto [u, v] : h.edges())
    if (color[u] == color[v]) return false;
  return true;
}

// Repeatedly delete vertices whose degree inside the survivors is below
// threshold. Whatever remains has induced minimum degree >= threshold.
inline VertexSet min_degree_subgraph(const Graph& g, double threshold) {
  detail::require(threshold >= 0, "threshold must be non-negative");
  VertexSet alive = VertexSet::full(g.n());
  std::vector<std::size_t> deg(g.n());
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < g.n(); ++v) {
    deg[v] = g.degree(v);
    if (static_cast<double>(deg[v]) < threshold) stack.push_back(v);
  }
  for (Vertex v : stack) alive.erase(v);
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    g.neighbors(v).for_each([&](Vertex u) {
      if (!alive.contains(u)) return;
      if (static_cast<double>(--deg[u]) < threshold) {
        alive.erase(u);
        stack.push_back(u);
      }
    });
  }
  return alive;
}

// Connected-component 2-coloring; empty result if h is not bipartite.
inline std::vector<int> bipartition(const Graph& h) {
  std::vector<int> side(h.n(), -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < h.n(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex v = queue[qi];
      bool ok = true;
      h.neighbors(v).for_each([&](Vertex u) {
        if (side[u] < 0) {
          side[u] = 1 - side[v];
          queue.push_back(u);
        } else if (side[u] == side[v]) {
          ok = false;
        }
      });
      if (!ok) return {};
    }
  }
  return side;
}

}  // namespace ramsey
