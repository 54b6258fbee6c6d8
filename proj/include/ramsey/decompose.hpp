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
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"

namespace ramsey {

// Layers W_i^{(j)} for i in [k], j in [r], stored at flat index i*r + j
// (0-based). The flat index is the lexicographic order on (i, j); embedding
// walks it from the top down.
struct LayeredPartition {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r = 0;
  std::size_t d = 0;                  // degeneracy bound used for the 4d threshold
  std::vector<VertexSet> layers;      // size k*r
  std::vector<std::size_t> layer_of;  // vertex -> flat index
  std::vector<std::size_t> level_sizes;  // |U_1|, |U_2|, ..., |U_k|

  std::size_t layer_count() const { return layers.size(); }
  std::size_t flat(std::size_t i, std::size_t j) const { return i * r + j; }
  const VertexSet& layer(std::size_t i, std::size_t j) const { return layers[flat(i, j)]; }
  std::size_t level_of(Vertex v) const { return layer_of[v] / r; }
  std::size_t color_of(Vertex v) const { return layer_of[v] % r; }
};

// Peel U_{i+1} = {v in U_i : deg_{H[U_i]}(v) >= 4d} until empty, then refine
// each W_i = U_i \ U_{i+1} by color. d = 0 is treated as 1, which is
// harmless for an edgeless graph and keeps the threshold positive.
// r = 0 means "number of colors used".
inline LayeredPartition split(const Graph& h, std::span<const int> coloring, std::size_t d, std::size_t r = 0) {
  detail::require(is_proper_coloring(h, coloring), "coloring is not a proper coloring of the pattern");
  const std::size_t used = static_cast<std::size_t>(color_count(coloring));
  if (r == 0) r = std::max<std::size_t>(used, 1);
  detail::require(used <= r, "coloring uses more than r colors");
  const std::size_t deg = degeneracy(h).d;
  detail::require(deg <= d, "pattern has degeneracy " + std::to_string(deg) + " > d = " + std::to_string(d));

  LayeredPartition p;
  p.n = h.n();
  p.r = r;
  p.d = d;
  p.layer_of.assign(h.n(), 0);
  const std::size_t threshold = 4 * std::max<std::size_t>(d, 1);
  VertexSet u = VertexSet::full(h.n());
  std::vector<VertexSet> levels;
  do {
    VertexSet next(h.n());
    u.for_each([&](Vertex v) {
      if (h.degree_in(v, u) >= threshold) next.insert(v);
    });
    p.level_sizes.push_back(u.size());
    levels.push_back(u - next);
    u = std::move(next);
  } while (!u.empty());
  p.k = levels.size();
  p.layers.assign(p.k * r, VertexSet(h.n()));
  for (std::size_t i = 0; i < p.k; ++i)
    levels[i].for_each([&](Vertex v) {
      const std::size_t f = p.flat(i, static_cast<std::size_t>(coloring[v]));
      p.layers[f].insert(v);
      p.layer_of[v] = f;
    });
  return p;
}

// Forward tuples e_x. Real forward neighbors come first, sorted by
// (layer, id); the remaining slots hold dummy ids n + a, one per slot, which
// stand for universal vertices of an extra top layer and are skipped by
// every intersection.
struct ForwardPlan {
  std::size_t n = 0;
  std::size_t d_pad = 0;
  std::size_t dummy_count = 0;
  std::vector<VertexTuple> forward;  // N+(x)
  std::vector<VertexTuple> padded;   // e_x, length d_pad

  bool is_dummy(Vertex v) const { return v >= n; }

  std::size_t max_forward() const {
    std::size_t m = 0;
    for (const auto& f : forward) m = std::max(m, f.size());
    return m;
  }
};

inline std::vector<VertexTuple> forward_neighbors(const Graph& h, const LayeredPartition& part) {
  std::vector<VertexTuple> fwd(h.n());
  for (Vertex x = 0; x < h.n(); ++x) {
    h.neighbors(x).for_each([&](Vertex y) {
      if (part.layer_of[y] > part.layer_of[x]) fwd[x].push_back(y);
    });
    std::sort(fwd[x].begin(), fwd[x].end(), [&](Vertex a, Vertex b) {
      return part.layer_of[a] != part.layer_of[b] ? part.layer_of[a] < part.layer_of[b] : a < b;
    });
  }
  return fwd;
}

inline ForwardPlan forward_plan(const Graph& h, const LayeredPartition& part, std::size_t d_pad) {
  detail::require(part.n == h.n(), "partition does not belong to this pattern");
  ForwardPlan plan;
  plan.n = h.n();
  plan.d_pad = d_pad;
  plan.dummy_count = d_pad;
  plan.forward = forward_neighbors(h, part);
  detail::require(plan.max_forward() <= d_pad, "d_pad = " + std::to_string(d_pad) +
                                                   " is below the largest forward degree " +
                                                   std::to_string(plan.max_forward()));
  plan.padded.resize(h.n());
  for (Vertex x = 0; x < h.n(); ++x) {
    plan.padded[x] = plan.forward[x];
    for (std::size_t a = plan.forward[x].size(); a < d_pad; ++a)
      plan.padded[x].push_back(static_cast<Vertex>(h.n() + a));
  }
  return plan;
}

inline ForwardPlan forward_plan(const Graph& h, const LayeredPartition& part) {
  return forward_plan(h, part, 4 * part.d);
}

// Relabel colors so the largest forward degree is as small as possible.
// Tries every permutation of the r colors (r <= 6 keeps this below 720
// splits); ties go to the lexicographically first permutation.
inline std::vector<int> best_color_order(const Graph& h, std::span<const int> coloring, std::size_t d,
                                         std::size_t r) {
  detail::require(r <= 6, "color-order search supports at most 6 colors");
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best(coloring.begin(), coloring.end());
  std::size_t best_fd = static_cast<std::size_t>(-1);
  do {
    std::vector<int> c(coloring.size());
    for (std::size_t v = 0; v < c.size(); ++v) c[v] = perm[static_cast<std::size_t>(coloring[v])];
    const auto part = split(h, c, d, r);
    std::size_t fd = 0;
    for (const auto& f : forward_neighbors(h, part)) fd = std::max(fd, f.size());
    if (fd < best_fd) {
      best_fd = fd;
      best = std::move(c);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace ramsey
