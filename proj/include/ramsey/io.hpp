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

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/error.hpp"
#include "ramsey/graph.hpp"

namespace ramsey {

namespace detail {

// Whitespace-separated tokens with '#' comments stripped.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back(tok);
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  std::string word(const char* what) {
    require(!done(), std::string("unexpected end of input, expected ") + what);
    return tokens_[pos_++];
  }

  std::size_t number(const char* what) {
    const std::string tok = word(what);
    require(!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos,
            std::string("expected non-negative integer for ") + what + ", got '" + tok + "'");
    try {
      return static_cast<std::size_t>(std::stoull(tok));
    } catch (const std::out_of_range&) {
      throw InputError(std::string("integer out of range for ") + what);
    }
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

inline Graph read_edges(TokenReader& tr) {
  const std::size_t n = tr.number("vertex count");
  const std::size_t m = tr.number("edge count");
  detail::require(n <= (std::size_t{1} << 31), "vertex count too large");
  Graph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t u = tr.number("edge endpoint");
    const std::size_t v = tr.number("edge endpoint");
    require(u < n && v < n, "edge endpoint out of range on edge " + std::to_string(i));
    require(u != v, "self-loop on edge " + std::to_string(i));
    require(!g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)),
            "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

}  // namespace detail

// Edge-list format: "n m" then m lines "u v", 0-indexed.
inline Graph read_graph(std::istream& in) {
  detail::TokenReader tr(in);
  Graph g = detail::read_edges(tr);
  detail::require(tr.done(), "trailing tokens after edge list");
  return g;
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

// Coloring format: "complete m" then the red graph as an edge list on m vertices.
inline TwoColoring read_coloring(std::istream& in) {
  detail::TokenReader tr(in);
  detail::require(tr.word("header") == "complete", "coloring must start with 'complete m'");
  const std::size_t m = tr.number("complete graph order");
  Graph red = detail::read_edges(tr);
  detail::require(red.n() == m, "red graph order differs from complete m");
  detail::require(tr.done(), "trailing tokens after red edge list");
  return TwoColoring(std::move(red));
}

inline void write_coloring(std::ostream& out, const TwoColoring& c) {
  out << "complete " << c.m << '\n';
  write_graph(out, c.red);
}

}  // namespace ramsey
