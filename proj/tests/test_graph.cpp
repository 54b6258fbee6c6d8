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

#include <sstream>

#include "oracles.hpp"
#include "ramsey/generators.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/io.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {
namespace {

VertexSet all(const Graph& g) { return VertexSet::full(g.n()); }

TEST(CommonNeighbors, TriangleHasOneMutualNeighbor) {
  const Graph g = complete_graph(3);
  const VertexTuple q{0, 1};
  EXPECT_EQ(common_neighbors(g, q, all(g)).to_vector(), (std::vector<Vertex>{2}));
}

TEST(CommonNeighbors, EmptyTupleReturnsTarget) {
  const Graph g = random_graph(30, 0.3, 1);
  VertexSet t(30);
  for (Vertex v : {3u, 7u, 29u}) t.insert(v);
  EXPECT_EQ(common_neighbors(g, VertexTuple{}, t), t);
  EXPECT_EQ(common_neighbor_count(g, VertexTuple{}, t), 3u);
}

TEST(CommonNeighbors, PathEndpointsOfLengthTwo) {
  const Graph g = path_graph(4);
  const VertexTuple q{0, 2};
  EXPECT_EQ(common_neighbors(g, q, all(g)).to_vector(), (std::vector<Vertex>{1}));
}

TEST(CommonNeighbors, InvalidVertexIsInputError) {
  const Graph g = path_graph(4);
  const VertexTuple q{0, 9};
  EXPECT_THROW(common_neighbors(g, q, all(g)), InputError);
}

TEST(CommonNeighbors, SubTupleMonotonicityAndOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng.below(60);
    const Graph g = random_graph(n, rng.unit(), rng.next());
    const auto adj = oracle::adjacency(g);
    VertexTuple q;
    for (std::size_t k = rng.below(4); k > 0; --k) q.push_back(static_cast<Vertex>(rng.below(n)));
    VertexSet t(n);
    for (Vertex v = 0; v < n; ++v)
      if (rng.bernoulli(0.7)) t.insert(v);
    const auto full = common_neighbors(g, q, t);
    EXPECT_EQ(oracle::members(full), oracle::common(adj, std::vector<unsigned>(q.begin(), q.end()), oracle::members(t)));
    EXPECT_EQ(common_neighbor_count(g, q, t), full.size());
    if (!q.empty()) {
      const VertexTuple sub(q.begin(), q.end() - 1);
      EXPECT_TRUE(full.subset_of(common_neighbors(g, sub, t)));
    }
  }
}

TEST(Graph, InvariantsHold) {
  const Graph g = random_graph(130, 0.4, 5);
  std::size_t degree_sum = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    EXPECT_FALSE(g.adjacent(v, v));
    degree_sum += g.degree(v);
    for (Vertex u = 0; u < g.n(); ++u) EXPECT_EQ(g.adjacent(u, v), g.adjacent(v, u));
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
  EXPECT_THROW(Graph(3).add_edge(1, 1), InputError);
}

TEST(Degeneracy, KnownValues) {
  EXPECT_EQ(degeneracy(complete_graph(4)).d, 3u);
  EXPECT_EQ(degeneracy(star_graph(5)).d, 1u);
  EXPECT_EQ(degeneracy(hypercube(3)).d, 3u);
  EXPECT_EQ(degeneracy(Graph(0)).d, 0u);
  EXPECT_EQ(degeneracy(Graph(7)).d, 0u);
}

TEST(Degeneracy, OrderingWitnessesBound) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(80);
    const Graph g = rng.bernoulli(0.5) ? random_graph(n, rng.unit(), rng.next())
                                       : random_degenerate(n, 1 + rng.below(5), rng.next());
    const auto [d, order] = degeneracy(g);
    EXPECT_EQ(d, oracle::degeneracy(oracle::adjacency(g)));
    ASSERT_EQ(order.size(), n);
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    for (Vertex v = 0; v < n; ++v) {
      std::size_t later = 0;
      g.neighbors(v).for_each([&](Vertex u) { later += pos[u] > pos[v] ? 1 : 0; });
      EXPECT_LE(later, d);
    }
  }
}

TEST(GreedyColor, KnownCounts) {
  const Graph k4 = complete_graph(4);
  auto c = greedy_color(k4, degeneracy(k4).ordering);
  EXPECT_EQ(color_count(c), 4);
  const Graph c6 = cycle_graph(6);
  c = greedy_color(c6, degeneracy(c6).ordering);
  EXPECT_EQ(color_count(c), 2);
  EXPECT_TRUE(is_proper_coloring(c6, c));
}

TEST(GreedyColor, RandomDegenerateUsesAtMostDPlusOne) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph h = random_degenerate(200, 2, seed);
    const auto [d, order] = degeneracy(h);
    const auto c = greedy_color(h, order);
    EXPECT_LE(d, 2u);
    EXPECT_LE(color_count(c), 3);
    EXPECT_TRUE(is_proper_coloring(h, c));
  }
}

TEST(Generators, ExtremeProbabilities) {
  EXPECT_EQ(random_graph(10, 0, 4).edge_count(), 0u);
  EXPECT_EQ(random_graph(10, 1, 4).edge_count(), 45u);
  EXPECT_THROW(random_graph(10, 1.5, 4), InputError);
}

TEST(Generators, SeedDeterminism) {
  EXPECT_EQ(random_graph(300, 0.3, 99), random_graph(300, 0.3, 99));
  EXPECT_FALSE(random_graph(300, 0.3, 99) == random_graph(300, 0.3, 100));
  EXPECT_EQ(random_degenerate(500, 3, 8), random_degenerate(500, 3, 8));
  EXPECT_EQ(random_coloring(100, 2).red, random_coloring(100, 2).red);
}

TEST(Generators, DegenerateModelsRespectBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_LE(degeneracy(random_degenerate(100, 2, seed)).d, 2u);
    const Graph b = random_degenerate_bipartite(100, 2, seed);
    EXPECT_LE(degeneracy(b).d, 2u);
    EXPECT_FALSE(bipartition(b).empty());
  }
  EXPECT_EQ(degeneracy(hypercube(4)).d, 4u);
  EXPECT_FALSE(bipartition(hypercube(3)).empty());
  EXPECT_TRUE(bipartition(cycle_graph(5)).empty());
}

TEST(TwoColoring, EveryPairExactlyOneColor) {
  const TwoColoring c = random_coloring(200, 17);
  const Graph blue = c.blue();
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto u = static_cast<Vertex>(rng.below(200));
    auto v = static_cast<Vertex>(rng.below(199));
    if (v >= u) ++v;
    EXPECT_NE(c.is_red(u, v), c.is_blue(u, v));
    EXPECT_NE(c.red.adjacent(u, v), blue.adjacent(u, v));
  }
}

TEST(MinDegreeSubgraph, KnownCases) {
  EXPECT_EQ(min_degree_subgraph(complete_graph(5), 4).size(), 5u);
  EXPECT_TRUE(min_degree_subgraph(star_graph(5), 2).empty());
  const Graph g = random_graph(400, 0.3, 21);
  const VertexSet core = min_degree_subgraph(g, 0.3 * 400 / 2);
  ASSERT_FALSE(core.empty());
  core.for_each([&](Vertex v) { EXPECT_GE(g.degree_in(v, core), 60u); });
}

TEST(MinDegreeSubgraph, OutputMinDegreeOnRandomInputs) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(100);
    const Graph g = random_graph(n, rng.unit(), rng.next());
    const double threshold = static_cast<double>(rng.below(n));
    const VertexSet core = min_degree_subgraph(g, threshold);
    core.for_each([&](Vertex v) { EXPECT_GE(static_cast<double>(g.degree_in(v, core)), threshold); });
  }
}

TEST(VertexSetOps, NthAndAlgebra) {
  VertexSet a(130), b(130);
  for (Vertex v : {0u, 64u, 65u, 129u}) a.insert(v);
  for (Vertex v : {64u, 100u, 129u}) b.insert(v);
  EXPECT_EQ(a.nth(0), 0u);
  EXPECT_EQ(a.nth(3), 129u);
  EXPECT_EQ((a & b).to_vector(), (std::vector<Vertex>{64, 129}));
  EXPECT_EQ((a - b).to_vector(), (std::vector<Vertex>{0, 65}));
  EXPECT_EQ((a | b).size(), 5u);
  EXPECT_EQ(VertexSet::full(130).size(), 130u);
  EXPECT_THROW(a.nth(4), InputError);
}

TEST(EdgeListIo, RoundTripWithComments) {
  std::istringstream in("# triangle plus pendant\n4 4\n0 1\n1 2 # edge\n2 0\n2 3\n");
  const Graph g = read_graph(in);
  EXPECT_EQ(g.n(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream again(out.str());
  EXPECT_EQ(read_graph(again), g);
}

TEST(EdgeListIo, MalformedInputsAreInputErrors) {
  for (const char* bad : {"3 1\n0 3\n", "3 1\n1 1\n", "3 2\n0 1\n", "3 1\n0 x\n", "3 2\n0 1\n1 0\n", "2 0\n5"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_graph(in), InputError) << bad;
  }
}

TEST(ColoringIo, RoundTrip) {
  const TwoColoring c = random_coloring(40, 3);
  std::ostringstream out;
  write_coloring(out, c);
  EXPECT_EQ(out.str().rfind("complete 40\n", 0), 0u);
  std::istringstream in(out.str());
  EXPECT_EQ(read_coloring(in).red, c.red);
  std::istringstream bad("complete 5\n4 0\n");
  EXPECT_THROW(read_coloring(bad), InputError);
}

}  // namespace
}  // namespace ramsey
