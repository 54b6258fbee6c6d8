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

// Hand-built embedding plans shared by the unit tests and the acceptance run.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ramsey/decompose.hpp"
#include "ramsey/embed.hpp"
#include "ramsey/rng.hpp"

namespace ramsey::fixtures {

inline VertexSet range_set(std::size_t n, Vertex lo, Vertex hi) {
  VertexSet s(n);
  for (Vertex v = lo; v < hi; ++v) s.insert(v);
  return s;
}

// Plan for a degenerate pattern whose layers get equal random blocks of the
// host, with theta_L = max(|V_L| / 2^D, 2 |W_L|).
inline EmbedPlan block_plan(const Graph& h, std::size_t d, std::size_t host_n, std::uint64_t seed) {
  const auto deg = degeneracy(h);
  auto c = greedy_color(h, deg.ordering);
  const std::size_t r = std::max<std::size_t>(2, static_cast<std::size_t>(color_count(c)));
  c = best_color_order(h, c, d, r);
  EmbedPlan plan = pattern_plan(h, c, d, r);
  const std::size_t layers = plan.layer_count();
  std::vector<Vertex> perm(host_n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (std::size_t i = host_n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (std::size_t L = 0; L < layers; ++L) {
    VertexSet t(host_n);
    for (std::size_t a = L * host_n / layers; a < (L + 1) * host_n / layers; ++a) t.insert(perm[a]);
    const double w = static_cast<double>(plan.partition.layers[L].size());
    plan.thetas.push_back(std::max(std::ldexp(static_cast<double>(t.size()), -static_cast<int>(plan.forward.d_pad)), 2 * w));
    plan.targets.push_back(std::move(t));
  }
  return plan;
}

}  // namespace ramsey::fixtures
