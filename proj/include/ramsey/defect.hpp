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

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Default refusal threshold for exhaustive moment enumeration.
inline constexpr double kDefaultExactLimit = 1e8;

struct DefectParams {
  double theta = 1;
  int s = 1;
  std::size_t d = 1;  // tuple arity

  void validate() const {
    detail::require(theta > 0 && std::isfinite(theta), "theta must be positive and finite");
    detail::require(s >= 0, "moment order s must be non-negative");
    detail::require(d >= 1, "tuple arity d must be at least 1");
  }
};

// omega_theta for a tuple with c common neighbors; +inf when c = 0.
inline double defect_from_count(double theta, std::size_t c) {
  if (static_cast<double>(c) >= theta) return 0;
  if (c == 0) return kInfinity;
  return theta / static_cast<double>(c);
}

// omega^s, with omega^0 read as the indicator of omega != 0.
inline double defect_power(double omega, int s) {
  if (s == 0) return omega != 0 ? 1.0 : 0.0;
  if (omega == 0) return 0;
  return std::pow(omega, static_cast<double>(s));
}

inline double defect(const Graph& g, double theta, std::span<const Vertex> q, const VertexSet& t) {
  detail::require(theta > 0, "theta must be positive");
  return defect_from_count(theta, common_neighbors(g, q, t).size());
}

struct MomentResult {
  enum class Mode { exact, sampled };

  double value = 0;
  Mode mode = Mode::exact;
  std::size_t sample_count = 0;  // 0 in exact mode
  double std_error = 0;          // 0 in exact mode
  std::size_t infinite_hits = 0;  // tuples with empty common neighborhood
  double tuples = 0;              // size of the product set
  double sum = 0;                 // exact mode: sum of omega^s over the product
  double repeated_sum = 0;        // exact mode: same, restricted to tuples with a repeated vertex
  std::uint64_t seed = 0;         // sampled mode: estimator seed

  bool exact() const { return mode == Mode::exact; }

  // Upper confidence value: exact value, or estimate plus sigmas standard errors.
  double upper(double sigmas) const { return exact() ? value : value + sigmas * std_error; }
};

inline double product_size(std::span<const VertexSet> factors) {
  double p = 1;
  for (const auto& f : factors) p *= static_cast<double>(f.size());
  return p;
}

namespace detail {

inline void check_factors(const Graph& g, const DefectParams& p, std::span<const VertexSet> factors,
                          const VertexSet& t) {
  p.validate();
  require(factors.size() == p.d, "number of factors must equal the arity d");
  require(t.universe() == g.n(), "target set universe does not match graph");
  for (const auto& f : factors) require(f.universe() == g.n(), "factor universe does not match graph");
}

// omega^s indexed by common-neighbor count 0..max_count.
inline std::vector<double> power_table(double theta, int s, std::size_t max_count) {
  std::vector<double> table(max_count + 1);
  for (std::size_t c = 0; c <= max_count; ++c) table[c] = defect_power(defect_from_count(theta, c), s);
  return table;
}

// Lexicographic walk over the product of factors (last coordinate fastest).
// visit(tuple, count) is called once per tuple with |N(tuple; t)|.
template <class Visit>
void enumerate_products(const Graph& g, std::span<const VertexSet> factors, const VertexSet& t, Visit&& visit) {
  const std::size_t d = factors.size();
  const std::size_t w = g.stride();
  std::vector<std::vector<Vertex>> lists;
  for (const auto& f : factors) lists.push_back(f.to_vector());
  for (const auto& l : lists)
    if (l.empty()) return;
  std::vector<Word> prefix((d + 1) * w);
  std::copy(t.words().begin(), t.words().end(), prefix.begin());
  std::vector<Vertex> tuple(d);
  std::function<void(std::size_t)> walk = [&](std::size_t level) {
    const Word* base = prefix.data() + level * w;
    if (level + 1 == d) {
      for (Vertex v : lists[level]) {
        const auto r = g.row(v);
        std::size_t c = 0;
        for (std::size_t i = 0; i < w; ++i) c += static_cast<std::size_t>(std::popcount(base[i] & r[i]));
        tuple[level] = v;
        visit(std::span<const Vertex>(tuple), c);
      }
      return;
    }
    Word* next = prefix.data() + (level + 1) * w;
    for (Vertex v : lists[level]) {
      const auto r = g.row(v);
      for (std::size_t i = 0; i < w; ++i) next[i] = base[i] & r[i];
      tuple[level] = v;
      walk(level + 1);
    }
  };
  walk(0);
}

inline bool has_repeat(std::span<const Vertex> q) {
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (q[i] == q[j]) return true;
  return false;
}

}  // namespace detail

// mu_{s,theta}(factors; t) by full enumeration, repetitions included.
// Throws BudgetExceeded when the product has more than limit tuples.
inline MomentResult moment_exact(const Graph& g, const DefectParams& p, std::span<const VertexSet> factors,
                                 const VertexSet& t, double limit = kDefaultExactLimit) {
  detail::check_factors(g, p, factors, t);
  MomentResult res;
  res.tuples = product_size(factors);
  if (res.tuples > limit)
    throw BudgetExceeded("product set has " + std::to_string(res.tuples) +
                         " tuples, above the exact-evaluation limit; use sampled moments");
  if (res.tuples == 0) return res;
  const auto table = detail::power_table(p.theta, p.s, t.size());
  detail::enumerate_products(g, factors, t, [&](std::span<const Vertex> q, std::size_t c) {
    const double x = table[c];
    res.sum += x;
    if (c == 0) ++res.infinite_hits;
    if (detail::has_repeat(q)) res.repeated_sum += x;
  });
  res.value = res.sum / res.tuples;
  return res;
}

// Monte-Carlo estimate from independent uniform tuples. std_error is the
// sample standard deviation over sqrt(samples); it is +inf for one sample.
inline MomentResult moment_sampled(const Graph& g, const DefectParams& p, std::span<const VertexSet> factors,
                                   const VertexSet& t, std::size_t samples, std::uint64_t seed) {
  detail::check_factors(g, p, factors, t);
  detail::require(samples >= 1, "samples must be at least 1");
  MomentResult res;
  res.mode = MomentResult::Mode::sampled;
  res.sample_count = samples;
  res.seed = seed;
  res.tuples = product_size(factors);
  if (res.tuples == 0) return res;
  std::vector<std::vector<Vertex>> lists;
  for (const auto& f : factors) lists.push_back(f.to_vector());
  Rng rng(seed);
  VertexTuple q(p.d);
  double mean = 0, m2 = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t k = 0; k < p.d; ++k) q[k] = lists[k][rng.below(lists[k].size())];
    const std::size_t c = common_neighbor_count(g, q, t);
    if (c == 0) ++res.infinite_hits;
    const double x = defect_power(defect_from_count(p.theta, c), p.s);
    if (!std::isfinite(x)) continue;
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  if (p.s > 0 && res.infinite_hits > 0) {
    res.value = kInfinity;
    res.std_error = kInfinity;
    return res;
  }
  res.value = mean;
  res.std_error = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples))
                              : kInfinity;
  return res;
}

// How guarantees are evaluated: exactly up to exact_limit tuples, sampled above.
struct EvalBudget {
  double exact_limit = 2e6;
  std::size_t samples = 20000;
  double safety_sigmas = 3;
};

inline MomentResult moment(const Graph& g, const DefectParams& p, std::span<const VertexSet> factors,
                           const VertexSet& t, const EvalBudget& budget, std::uint64_t seed) {
  if (product_size(factors) <= budget.exact_limit) return moment_exact(g, p, factors, t, budget.exact_limit);
  return moment_sampled(g, p, factors, t, budget.samples, seed);
}

// Same set repeated d times: mu(a^d; t).
inline MomentResult moment_power(const Graph& g, const DefectParams& p, const VertexSet& a, const VertexSet& t,
                                 const EvalBudget& budget, std::uint64_t seed) {
  const std::vector<VertexSet> factors(p.d, a);
  return moment(g, p, factors, t, budget, seed);
}

// Number of Q in v1^d with |N(Q; v2)| < theta / |v1|^{d/s}.
inline std::uint64_t count_low_codegree(const Graph& g, const DefectParams& p, const VertexSet& v1,
                                        const VertexSet& v2, double limit = kDefaultExactLimit) {
  detail::require(p.s >= 1, "count_low_codegree needs s >= 1");
  const std::vector<VertexSet> factors(p.d, v1);
  detail::check_factors(g, p, factors, v2);
  if (product_size(factors) > limit) throw BudgetExceeded("product set above the exact-evaluation limit");
  const double cut =
      p.theta / std::pow(static_cast<double>(v1.size()), static_cast<double>(p.d) / static_cast<double>(p.s));
  std::uint64_t bad = 0;
  detail::enumerate_products(g, factors, v2, [&](std::span<const Vertex>, std::size_t c) {
    if (static_cast<double>(c) < cut) ++bad;
  });
  return bad;
}

}  // namespace ramsey
