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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ramsey/generators.hpp"
#include "ramsey/prune.hpp"

namespace ramsey {
namespace {

VertexSet range_set(std::size_t n, Vertex lo, Vertex hi) {
  VertexSet s(n);
  for (Vertex v = lo; v < hi; ++v) s.insert(v);
  return s;
}

// Brute-force per-vertex concentration into target over dom^d.
std::vector<double> oracle_concentration(const Graph& g, const VertexSet& dom, const VertexSet& target,
                                         std::size_t d, int s, double theta) {
  const auto adj = oracle::adjacency(g);
  const auto t = oracle::members(target);
  std::vector<double> out(g.n(), 0);
  const std::vector<std::vector<unsigned>> lists(d, oracle::members(dom));
  oracle::for_each_tuple(lists, [&](const std::vector<unsigned>& q) {
    const double x = oracle::omega_pow(oracle::omega(theta, oracle::common(adj, q, t).size()), s);
    std::vector<unsigned> seen;
    for (unsigned v : q)
      if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
        seen.push_back(v);
        out[v] += x;
      }
  });
  return out;
}

TEST(Concentration, ExactMatchesOracle) {
  const Graph g = random_graph(24, 0.5, 3);
  const auto dom = range_set(24, 0, 12), target = range_set(24, 12, 24);
  const auto c = concentration(g, dom, target, 2, 2, 5, EvalBudget{}, 1);
  ASSERT_TRUE(c.exact);
  const auto o = oracle_concentration(g, dom, target, 2, 2, 5);
  for (Vertex v = 0; v < 24; ++v) EXPECT_DOUBLE_EQ(c.sum[v], o[v]) << v;
}

TEST(Concentration, SampledCoversExact) {
  const Graph g = random_graph(30, 0.5, 4);
  const auto dom = range_set(30, 0, 15), target = range_set(30, 15, 30);
  EvalBudget tiny{10, 40000, 3};
  const auto c = concentration(g, dom, target, 2, 1, 6, tiny, 9);
  ASSERT_FALSE(c.exact);
  const auto o = oracle_concentration(g, dom, target, 2, 1, 6);
  dom.for_each([&](Vertex v) { EXPECT_NEAR(c.sum[v], o[v], 4 * c.error[v] + 1e-9) << v; });
}

TEST(RemoveConcentrated, ZeroDefectsRemoveNothing) {
  const Graph g = complete_graph(40);
  const std::vector<VertexSet> a{range_set(40, 0, 20), range_set(40, 20, 40)};
  const auto o = remove_concentrated(g, a, 1, 4, 5, EvalBudget{}, 1);
  EXPECT_TRUE(o.success) << o.failure;
  EXPECT_TRUE(o.removed.empty());
  EXPECT_EQ(o.sets, a);
}

TEST(RemoveConcentrated, IsolatedVertexIsRemoved) {
  Graph g = complete_graph(30);
  Graph h(30);
  for (const auto& [u, v] : g.edges())
    if (!(u == 0 && v >= 15)) h.add_edge(u, v);
  const std::vector<VertexSet> a{range_set(30, 0, 15), range_set(30, 15, 30)};
  const auto o = remove_concentrated(h, a, 1, 4, 3, EvalBudget{}, 1);
  EXPECT_TRUE(o.removed.contains(0));
  EXPECT_EQ(o.removed.size(), 1u);
  EXPECT_FALSE(o.sets[0].contains(0));
  // The infinite moment of the input is reported, not hidden.
  EXPECT_FALSE(o.guarantees[1].holds);
}

TEST(RemoveConcentrated, ConclusionsRederiveByBruteForce) {
  const Graph g = random_graph(300, 0.5, 17);
  const std::vector<VertexSet> a{range_set(300, 0, 150), range_set(300, 150, 300)};
  const double theta = 30;
  const auto o = remove_concentrated(g, a, 2, 8, theta, EvalBudget{}, 2);
  ASSERT_TRUE(o.success) << o.failure;
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_GE(static_cast<double>(o.sets[j].size()), std::pow(2.0, -0.25) * 150);
    EXPECT_TRUE(o.sets[j].subset_of(a[j]));
    const auto& rest = o.sets[1 - j];
    const auto conc = oracle_concentration(g, rest, o.sets[j], 2, 8, theta);
    const double cap = 2 * std::pow(static_cast<double>(rest.size()), 2 - 0.625);
    rest.for_each([&](Vertex v) { EXPECT_LE(conc[v], cap); });
  }
}

TEST(RemoveConcentrated, RejectsLowS) {
  const Graph g = complete_graph(10);
  const std::vector<VertexSet> a{range_set(10, 0, 5), range_set(10, 5, 10)};
  EXPECT_THROW(remove_concentrated(g, a, 2, 7, 1, EvalBudget{}, 1), InputError);
}

void expect_structure(const std::vector<VertexSet>& b, const PartitionOutcome& o) {
  for (std::size_t f = 0; f < o.sets.size(); ++f) {
    EXPECT_TRUE(o.sets[f].subset_of(b[f % o.r]));
    for (std::size_t g2 = f + 1; g2 < o.sets.size(); ++g2) EXPECT_TRUE(o.sets[f].disjoint_from(o.sets[g2]));
  }
}

TEST(RandomPartition, SingleLayerSingleColorIsIdentity) {
  const Graph g = random_graph(50, 0.5, 1);
  const std::vector<VertexSet> b{VertexSet::full(50)};
  PartitionParams pp;
  pp.p = {1.0};
  const auto o = random_partition(g, b, 1, pp, 3);
  ASSERT_TRUE(o.success) << o.failure;
  EXPECT_EQ(o.sets[0], b[0]);
  EXPECT_EQ(o.restarts, 1u);
}

TEST(RandomPartition, CompleteHostOnlyNeedsSizes) {
  const Graph g = complete_graph(400);
  const std::vector<VertexSet> b{range_set(400, 0, 200), range_set(400, 200, 400)};
  PartitionParams pp;
  pp.p = {0.5, 0.5};
  pp.d = 2;
  pp.theta = 4;
  pp.e1_samples = 2000;
  const auto o = random_partition(g, b, 2, pp, 5);
  ASSERT_TRUE(o.success) << o.failure;
  EXPECT_TRUE(o.e1 && o.e2 && o.e3);
  EXPECT_EQ(o.dominance_violations, 0u);
  expect_structure(b, o);
}

TEST(RandomPartition, DeskScaleGeometric) {
  const Graph g = random_graph(2000, 0.5, 8);
  const std::vector<VertexSet> b{range_set(2000, 0, 1000), range_set(2000, 1000, 2000)};
  PartitionParams pp;
  pp.d = 2;
  pp.s = 1;
  pp.theta = 40;
  pp.eps_prime = 0.05;
  pp.e1_samples = 20000;
  pp.e1_tolerance = 0.01;
  double total = 0;
  for (int i = 1; i <= 3; ++i) total += std::pow(2.0, -i / 160.0);
  for (int i = 1; i <= 3; ++i) pp.p.push_back(std::pow(2.0, -i / 160.0) / total);
  const auto o = random_partition(g, b, 3, pp, 4);
  ASSERT_TRUE(o.success) << o.failure;
  EXPECT_LE(o.restarts, 50u);
  expect_structure(b, o);
  EXPECT_EQ(o.dominance_violations, 0u);
  EXPECT_GT(o.dominance_checked, 0u);
  for (const auto& c : o.conclusions) EXPECT_TRUE(c.holds) << c.name;
  const auto again = random_partition(g, b, 3, pp, 4);
  EXPECT_EQ(again.sets, o.sets);
  EXPECT_EQ(again.restart, o.restart);
}

TEST(RandomPartition, RejectsBadSchedule) {
  const Graph g = complete_graph(10);
  const std::vector<VertexSet> b{range_set(10, 0, 5), range_set(10, 5, 10)};
  PartitionParams pp;
  pp.p = {0.7, 0.7};
  EXPECT_THROW(random_partition(g, b, 2, pp, 1), InputError);
  pp.p = {0.5};
  EXPECT_THROW(random_partition(g, b, 2, pp, 1), InputError);
}

}  // namespace
}  // namespace ramsey
