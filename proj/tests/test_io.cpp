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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ramsey/generators.hpp"
#include "ramsey/io.hpp"
#include "ramsey/json.hpp"

namespace ramsey {
namespace {

TEST(Json, InfinityIsAString) {
  EXPECT_EQ(num(kInfinity).dump(), "\"inf\"");
  EXPECT_EQ(get_num(json("inf")), kInfinity);
  EXPECT_EQ(get_num(json(2.5)), 2.5);
  EXPECT_THROW(get_num(json("nan")), InputError);
}

TEST(Json, MapRoundTrip) {
  const std::vector<Vertex> map{3, kUnmapped, 0};
  const json j = map_json(map);
  EXPECT_TRUE(j[1].is_null());
  EXPECT_EQ(map_from_json(j), map);
}

TEST(Json, ConfigRoundTrip) {
  PipelineConfig c;
  c.d = 3;
  c.theta = 12.5;
  c.p = {0.5, 0.25};
  c.t_schedule = {1, 0, 2};
  c.fallback = true;
  c.budget.samples = 77;
  const json j = c;
  const auto back = j.get<PipelineConfig>();
  EXPECT_EQ(json(back).dump(), j.dump());
}

TEST(Json, ConfigRejectsUnknownKeys) {
  EXPECT_THROW(json({{"tehta", 3}}).get<PipelineConfig>(), InputError);
  EXPECT_NO_THROW(json({{"comment", "x"}, {"theta", 3}}).get<PipelineConfig>());
}

TEST(Json, ShippedConfigsLoad) {
  for (const auto& entry : std::filesystem::directory_iterator(RAMSEY_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    SCOPED_TRACE(entry.path().string());
    const auto c = load_config(entry.path().string());
    EXPECT_NO_THROW(c.validate());
  }
}

TEST(Json, DefaultConfigMatchesLibraryDefaults) {
  const auto c = load_config(std::string(RAMSEY_CONFIG_DIR) + "/default.json");
  EXPECT_EQ(json(c).dump(), json(PipelineConfig{}).dump());
}

TEST(Json, LoadErrorsAreInputErrors) {
  EXPECT_THROW(load_json("/nonexistent/file.json"), InputError);
  const auto path = std::filesystem::temp_directory_path() / "ramsey_bad.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_config(path.string()), InputError);
  std::ofstream(path) << "{\"s\": \"one\"}";
  EXPECT_THROW(load_config(path.string()), InputError);
  std::filesystem::remove(path);
}

TEST(EdgeList, RoundTrip) {
  const Graph g = random_graph(30, 0.3, 4);
  std::stringstream ss;
  write_graph(ss, g);
  const Graph back = read_graph(ss);
  EXPECT_EQ(back.n(), g.n());
  EXPECT_EQ(back.edge_count(), g.edge_count());
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(back.adjacent(u, v), g.adjacent(u, v));
}

TEST(EdgeList, CommentsAndErrors) {
  std::istringstream ok("# triangle\n3 3\n0 1 # first\n1 2\n2 0\n");
  EXPECT_EQ(read_graph(ok).edge_count(), 3u);
  std::istringstream loop("2 1\n1 1\n");
  EXPECT_THROW(read_graph(loop), InputError);
  std::istringstream range("2 1\n0 2\n");
  EXPECT_THROW(read_graph(range), InputError);
  std::istringstream shortfall("3 2\n0 1\n");
  EXPECT_THROW(read_graph(shortfall), InputError);
  std::istringstream word("3 x\n");
  EXPECT_THROW(read_graph(word), InputError);
}

TEST(Coloring, RoundTrip) {
  const TwoColoring c = random_coloring(25, 8);
  std::stringstream ss;
  write_coloring(ss, c);
  EXPECT_EQ(ss.str().rfind("complete 25", 0), 0u);
  const TwoColoring back = read_coloring(ss);
  EXPECT_EQ(back.m, 25u);
  EXPECT_EQ(back.red.edge_count(), c.red.edge_count());
  EXPECT_EQ(back.blue().edge_count() + back.red.edge_count(), 25u * 24 / 2);
}

TEST(Json, ResultReportsAreStable) {
  const auto res = embed_bipartite_pipeline(complete_graph(40), path_graph(6), PipelineConfig{}, 3);
  const json j = res;
  EXPECT_EQ(j.at("seed"), 3);
  EXPECT_TRUE(j.at("success").get<bool>());
  EXPECT_TRUE(j.contains("stages"));
  EXPECT_EQ(json::parse(j.dump()).dump(), j.dump());
}

}  // namespace
}  // namespace ramsey
