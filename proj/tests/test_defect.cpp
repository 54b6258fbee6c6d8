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
#include "ramsey/defect.hpp"
#include "ramsey/generators.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {
namespace {

VertexSet random_subset(std::size_t n, double keep, Rng& rng) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v)
    if (rng.bernoulli(keep)) s.insert(v);
  if (s.empty()) s.insert(static_cast<Vertex>(rng.below(n)));
  return s;
}

std::vector<std::vector<unsigned>> lists(const std::vector<VertexSet>& fs) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& f : fs) out.push_back(oracle::members(f));
  return out;
}

TEST(Defect, SpecValues) {
  EXPECT_EQ(defect_from_count(5, 10), 0);
  EXPECT_EQ(defect_from_count(6, 2), 3);
  EXPECT_EQ(defect_from_count(4, 0), kInfinity);
  EXPECT_EQ(defect_power(kInfinity, 0), 1);
  EXPECT_EQ(defect_power(0, 0), 0);
  EXPECT_EQ(defect_power(3, 2), 9);
}

TEST(Defect, OnGraph) {
  const Graph g = complete_bipartite(2, 10);
  const VertexSet t = VertexSet::full(12);
  EXPECT_EQ(defect(g, 5, VertexTuple{0, 1}, t), 0);
  EXPECT_EQ(defect(g, 20, VertexTuple{0, 1}, t), 2);
  EXPECT_EQ(defect(g, 1, VertexTuple{0, 2}, t), kInfinity);
}

TEST(MomentExact, AllZeroWhenEveryTupleHasThetaNeighbors) {
  const Graph g = complete_bipartite(5, 30);
  VertexSet a(35), t(35);
  for (Vertex v = 0; v < 5; ++v) a.insert(v);
  for (Vertex v = 5; v < 35; ++v) t.insert(v);
  const std::vector<VertexSet> f(3, a);
  const auto r = moment_exact(g, {10, 2, 3}, f, t);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.tuples, 125);
  EXPECT_TRUE(r.exact());
}

TEST(MomentExact, SingletonFactorIsTheDefect) {
  const Graph g = random_graph(20, 0.4, 2);
  const VertexSet t = VertexSet::full(20);
  for (Vertex v = 0; v < 20; ++v) {
    const std::vector<VertexSet> f{VertexSet::of(20, std::vector<Vertex>{v})};
    EXPECT_EQ(moment_exact(g, {12, 1, 1}, f, t).value, defect(g, 12, VertexTuple{v}, t));
  }
}

TEST(MomentExact, MatchesOracleOnRandomInstances) {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng.below(17);
    const Graph g = random_graph(n, 0.2 + 0.7 * rng.unit(), rng.next());
    const std::size_t d = 1 + rng.below(3);
    const int s = static_cast<int>(rng.below(5));
    const double theta = 0.5 + rng.unit() * static_cast<double>(n);
    std::vector<VertexSet> f;
    for (std::size_t k = 0; k < d; ++k) f.push_back(random_subset(n, 0.6, rng));
    const VertexSet t = random_subset(n, 0.8, rng);
    const auto got = moment_exact(g, {theta, s, d}, f, t);
    const auto want = oracle::moment(oracle::adjacency(g), theta, s, lists(f), oracle::members(t));
    EXPECT_EQ(got.value, want.value);
    EXPECT_EQ(got.repeated_sum, want.repeated_sum);
    EXPECT_EQ(got.infinite_hits, want.empty);
    if (s > 0) {
      EXPECT_EQ(std::isinf(got.value), got.infinite_hits > 0);
    }
  }
}

TEST(MomentExact, FixedInstanceFrozenValue) {
  // n=20, d=2, s=2, theta=3 on a fixed seed; value frozen from the oracle.
  const Graph g = random_graph(20, 0.5, 7);
  const VertexSet all = VertexSet::full(20);
  const std::vector<VertexSet> f(2, all);
  const auto got = moment_exact(g, {3, 2, 2}, f, all);
  const auto want = oracle::moment(oracle::adjacency(g), 3, 2, lists(f), oracle::members(all));
  EXPECT_EQ(got.value, want.value);
  EXPECT_EQ(got.tuples, 400);
}

TEST(MomentExact, BudgetRefusal) {
  const Graph g = random_graph(50, 0.5, 1);
  const VertexSet all = VertexSet::full(50);
  const std::vector<VertexSet> f(3, all);
  EXPECT_THROW(moment_exact(g, {3, 1, 3}, f, all, 1000), BudgetExceeded);
  EXPECT_THROW(moment_exact(g, {3, 1, 2}, f, all), InputError);
}

TEST(MomentSampled, ZeroInstanceHasZeroError) {
  const Graph g = complete_graph(30);
  const VertexSet all = VertexSet::full(30);
  const std::vector<VertexSet> f(2, all);
  const auto r = moment_sampled(g, {5, 2, 2}, f, all, 500, 1);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.std_error, 0);
  EXPECT_EQ(r.sample_count, 500u);
}

TEST(MomentSampled, SingleSampleIsOneTupleDefect) {
  const Graph g = random_graph(20, 0.5, 3);
  const VertexSet all = VertexSet::full(20);
  const std::vector<VertexSet> f(2, all);
  const auto r = moment_sampled(g, {8, 2, 2}, f, all, 1, 77);
  Rng rng(77);
  const VertexTuple q{static_cast<Vertex>(rng.below(20)), static_cast<Vertex>(rng.below(20))};
  EXPECT_EQ(r.value, defect_power(defect(g, 8, q, all), 2));
  EXPECT_TRUE(std::isinf(r.std_error));
}

TEST(MomentSampled, CoversExactValue) {
  const Graph g = random_graph(20, 0.6, 5);
  const VertexSet all = VertexSet::full(20);
  const std::vector<VertexSet> f(2, all);
  const DefectParams p{6, 2, 2};
  const double exact = moment_exact(g, p, f, all).value;
  ASSERT_TRUE(std::isfinite(exact));
  int covered = 0;
  double pooled = 0, pooled_var = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = moment_sampled(g, p, f, all, 20000, seed);
    covered += std::abs(r.value - exact) <= 3 * r.std_error ? 1 : 0;
    if (seed < 50) {
      pooled += r.value / 50;
      pooled_var += r.std_error * r.std_error / 2500;
    }
  }
  EXPECT_GE(covered, 97);
  EXPECT_LE(std::abs(pooled - exact), 3 * std::sqrt(pooled_var));
}

TEST(MomentSampled, InfiniteWhenEmptyNeighborhoodSampled) {
  const Graph g(10);
  const VertexSet all = VertexSet::full(10);
  const std::vector<VertexSet> f(1, all);
  EXPECT_TRUE(std::isinf(moment_sampled(g, {1, 1, 1}, f, all, 10, 0).value));
  EXPECT_EQ(moment_sampled(g, {1, 0, 1}, f, all, 10, 0).value, 1);
}

TEST(CountLowCodegree, KnownCases) {
  const Graph kb = complete_bipartite(6, 6);
  VertexSet v1(12), v2(12);
  for (Vertex v = 0; v < 6; ++v) v1.insert(v), v2.insert(v + 6);
  EXPECT_EQ(count_low_codegree(kb, {6, 1, 2}, v1, v2), 0u);
  EXPECT_EQ(count_low_codegree(Graph(12), {1, 1, 2}, v1, v2), 36u);
}

TEST(CountLowCodegree, BelowMomentOnRandomInstances) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = random_graph(18, 0.7, rng.next());
    const VertexSet v1 = random_subset(18, 0.5, rng), v2 = random_subset(18, 0.8, rng);
    const DefectParams p{1 + rng.unit() * 8, 4, 2};
    const double mu = moment_exact(g, p, std::vector<VertexSet>(2, v1), v2).value;
    const auto count = count_low_codegree(g, p, v1, v2);
    if (std::isfinite(mu)) {
      EXPECT_TRUE(count == 0 || static_cast<double>(count) < mu);
    }
  }
}

}  // namespace
}  // namespace ramsey
