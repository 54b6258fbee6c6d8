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

// Command-line front end. Every subcommand prints one JSON report (or a
// short text summary) carrying the resolved config and seed, so any run can
// be replayed. Exit codes: 0 success, 1 structured failure, 2 input error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/decompose.hpp"
#include "ramsey/defect.hpp"
#include "ramsey/drc.hpp"
#include "ramsey/embed.hpp"
#include "ramsey/error.hpp"
#include "ramsey/generators.hpp"
#include "ramsey/io.hpp"
#include "ramsey/json.hpp"
#include "ramsey/pipeline.hpp"
#include "ramsey/prune.hpp"

namespace {

using namespace ramsey;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct Common {
  std::uint64_t seed = 0;
  std::string config_path;
  std::string format = "json";
  std::size_t trials = 1;
};

// One trial: a report object and whether it counts as a success.
struct Trial {
  json report;
  bool success = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_graph(const std::string& path) {
  std::istringstream in(slurp(path));
  try {
    return read_graph(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

TwoColoring load_coloring(const std::string& path) {
  std::istringstream in(slurp(path));
  try {
    return read_coloring(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

bool is_coloring_file(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (ls >> tok) return tok == "complete";
  }
  return false;
}

// Two halves of a random permutation of the vertex set.
std::pair<VertexSet, VertexSet> random_halves(std::size_t n, std::uint64_t seed) {
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  VertexSet a(n), b(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    a.insert(perm[i]);
    b.insert(perm[n / 2 + i]);
  }
  return {a, b};
}

double cross_density(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) return 0;
  return static_cast<double>(g.edges_between(a, b)) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

DrcParams drc_params(const PipelineConfig& cfg, std::size_t m) {
  DrcParams p;
  p.d = cfg.d == 0 ? 2 : cfg.d;
  p.s = cfg.s;
  p.t = cfg.t;
  p.eta = cfg.eta > 0 ? cfg.eta : 0.25;
  p.eps = cfg.eps;
  p.xi = cfg.xi;
  p.alpha = cfg.alpha;
  p.theta = cfg.theta > 0 ? cfg.theta : cfg.xi * cfg.xi * static_cast<double>(m);
  p.max_restarts = cfg.drc_restarts;
  p.t_schedule = cfg.t_schedule;
  p.budget = cfg.budget;
  return p;
}

std::vector<int> pattern_colors(const Graph& h, std::size_t d, std::size_t r) {
  const auto deg = degeneracy(h);
  auto c = greedy_color(h, deg.ordering);
  if (r == 0) r = std::max<std::size_t>(2, static_cast<std::size_t>(color_count(c)));
  return r <= 6 ? best_color_order(h, c, std::max(d, deg.d), r) : c;
}

// Runs the trials and prints the report. trial seeds are seed, seed+1, ...
int run(const std::string& command, const Common& common, const PipelineConfig& cfg, json inputs,
        const std::function<Trial(std::uint64_t)>& trial) {
  json out = {{"command", command}, {"seed", common.seed}, {"config", cfg}, {"inputs", std::move(inputs)}};
  std::size_t wins = 0;
  std::vector<json> trials;
  for (std::size_t i = 0; i < common.trials; ++i) {
    Trial t = trial(common.seed + i);
    wins += t.success ? 1 : 0;
    t.report["trial_seed"] = common.seed + i;
    trials.push_back(std::move(t.report));
  }
  const bool ok = wins == common.trials;
  if (common.trials == 1) {
    out["result"] = trials[0];
  } else {
    out["trials"] = common.trials;
    out["successes"] = wins;
    out["results"] = trials;
  }
  out["success"] = ok;
  if (common.format == "text") {
    std::cout << command << " seed=" << common.seed << " trials=" << common.trials << " successes=" << wins << '\n';
    for (const auto& t : trials) {
      std::cout << "  seed " << t.at("trial_seed").get<std::uint64_t>() << ": "
                << (t.value("success", false) ? "success" : "failure");
      if (t.contains("failure") && t["failure"].is_string() && !t["failure"].get<std::string>().empty())
        std::cout << " (" << t["failure"].get<std::string>() << ")";
      std::cout << '\n';
    }
  } else {
    std::cout << out.dump(2) << '\n';
  }
  return ok ? kExitOk : kExitFailure;
}

void write_text(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  emit(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monochromatic embeddings of degenerate graphs by dependent random choice"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "master seed")->capture_default_str();
  app.add_option("--config", common.config_path, "JSON config with PipelineConfig fields");
  app.add_option("--format", common.format, "report format")->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--trials", common.trials, "independent trials with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber)->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "write a random or named graph, or a random two-coloring");
  std::string gen_kind, gen_out;
  std::size_t gen_n = 10, gen_n2 = 0, gen_d = 2;
  double gen_p = 0.5;
  gen->add_option("kind", gen_kind, "graph family")
      ->required()
      ->check(CLI::IsMember({"random", "bipartite", "degenerate", "degenerate-bipartite", "coloring", "complete",
                             "complete-bipartite", "path", "cycle", "star", "hypercube"}));
  gen->add_option("-n", gen_n, "vertex count (dimension for hypercube, leaves for star)")->capture_default_str();
  gen->add_option("--n2", gen_n2, "second side for bipartite families");
  gen->add_option("-p", gen_p, "edge probability")->capture_default_str();
  gen->add_option("-d", gen_d, "degeneracy for degenerate families")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // decompose
  auto* dec = app.add_subcommand("decompose", "layer a pattern and compute its forward neighbors");
  std::string dec_pattern;
  std::size_t dec_r = 0;
  dec->add_option("pattern", dec_pattern, "pattern edge list")->required();
  dec->add_option("-r", dec_r, "number of colors (default: greedy coloring)");

  // moment
  auto* mom = app.add_subcommand("moment", "defect moment of V^d over V");
  std::string mom_graph;
  std::size_t mom_d = 2;
  int mom_s = 1;
  double mom_theta = 1;
  mom->add_option("graph", mom_graph, "host edge list")->required();
  mom->add_option("-d", mom_d, "tuple arity")->capture_default_str();
  mom->add_option("-s", mom_s, "exponent")->capture_default_str();
  mom->add_option("--theta", mom_theta, "threshold")->capture_default_str();

  // drc
  auto* drc = app.add_subcommand("drc", "one dependent random choice stage");
  std::string drc_input, drc_variant = "bipartite";
  drc->add_option("input", drc_input, "host edge list, or a coloring for chain and mutual")->required();
  drc->add_option("--variant", drc_variant, "stage variant")
      ->check(CLI::IsMember({"bipartite", "general", "pair", "chain", "mutual"}))
      ->capture_default_str();

  // partition
  auto* part = app.add_subcommand("partition", "random partition of random host blocks into pattern layers");
  std::string part_host, part_pattern;
  part->add_option("host", part_host, "host edge list")->required();
  part->add_option("pattern", part_pattern, "pattern edge list")->required();

  // embed
  auto* emb = app.add_subcommand("embed", "embed a bipartite pattern into a host graph");
  std::string emb_host, emb_pattern;
  bool emb_one_side = false;
  double emb_eps = 1;
  emb->add_option("host", emb_host, "host edge list")->required();
  emb->add_option("pattern", emb_pattern, "bipartite pattern edge list")->required();
  emb->add_flag("--one-side", emb_one_side, "bipartite host; pattern with one side of bounded degree");
  emb->add_option("--eps", emb_eps, "eps for --one-side")->capture_default_str();

  // ramsey
  auto* ram = app.add_subcommand("ramsey", "find a monochromatic copy of a pattern in a two-coloring");
  std::string ram_coloring, ram_pattern;
  ram->add_option("coloring", ram_coloring, "coloring file")->required();
  ram->add_option("pattern", ram_pattern, "pattern edge list")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "re-check the embedding in a report");
  std::string ver_host, ver_pattern, ver_report;
  ver->add_option("host", ver_host, "host edge list or coloring")->required();
  ver->add_option("pattern", ver_pattern, "pattern edge list")->required();
  ver->add_option("report", ver_report, "JSON report with a map (and color for colorings)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    PipelineConfig cfg;
    if (!common.config_path.empty()) cfg = load_config(common.config_path);
    cfg.validate();

    if (*gen) {
      const std::uint64_t seed = common.seed;
      if (gen_kind == "coloring") {
        const TwoColoring c = random_coloring(gen_n, seed);
        write_text(gen_out, [&](std::ostream& o) {
          o << "# random two-coloring, seed " << seed << '\n';
          write_coloring(o, c);
        });
        return kExitOk;
      }
      Graph g;
      if (gen_kind == "random") g = random_graph(gen_n, gen_p, seed);
      else if (gen_kind == "bipartite") g = random_bipartite(gen_n, gen_n2 ? gen_n2 : gen_n, gen_p, seed);
      else if (gen_kind == "degenerate") g = random_degenerate(gen_n, gen_d, seed);
      else if (gen_kind == "degenerate-bipartite") g = random_degenerate_bipartite(gen_n, gen_d, seed);
      else if (gen_kind == "complete") g = complete_graph(gen_n);
      else if (gen_kind == "complete-bipartite") g = complete_bipartite(gen_n, gen_n2 ? gen_n2 : gen_n);
      else if (gen_kind == "path") g = path_graph(gen_n);
      else if (gen_kind == "cycle") g = cycle_graph(gen_n);
      else if (gen_kind == "star") g = star_graph(gen_n);
      else g = hypercube(gen_n);
      write_text(gen_out, [&](std::ostream& o) {
        o << "# " << gen_kind << ", seed " << seed << '\n';
        write_graph(o, g);
      });
      return kExitOk;
    }

    if (*dec) {
      const Graph h = load_graph(dec_pattern);
      const auto deg = degeneracy(h);
      const std::size_t d = cfg.d == 0 ? std::max<std::size_t>(deg.d, 1) : cfg.d;
      const auto colors = pattern_colors(h, d, dec_r ? dec_r : cfg.r);
      const std::size_t r = dec_r ? dec_r : cfg.r ? cfg.r : std::max<std::size_t>(2, color_count(colors));
      return run("decompose", common, cfg, {{"pattern", dec_pattern}}, [&](std::uint64_t) {
        const auto part = split(h, colors, d, r);
        const auto fwd = forward_plan(h, part, 4 * d);
        return Trial{{{"success", true},
                      {"degeneracy", deg.d},
                      {"ordering", deg.ordering},
                      {"coloring", colors},
                      {"partition", part},
                      {"forward", fwd},
                      {"max_forward_degree", fwd.max_forward()}},
                     true};
      });
    }

    if (*mom) {
      const Graph g = load_graph(mom_graph);
      const VertexSet all = VertexSet::full(g.n());
      return run("moment", common, cfg, {{"graph", mom_graph}, {"d", mom_d}, {"s", mom_s}, {"theta", num(mom_theta)}},
                 [&](std::uint64_t seed) {
                   const auto mr = moment_power(g, {mom_theta, mom_s, mom_d}, all, all, cfg.budget, seed);
                   return Trial{{{"success", true}, {"moment", mr}}, true};
                 });
    }

    if (*drc) {
      json inputs = {{"input", drc_input}, {"variant", drc_variant}};
      if (drc_variant == "chain" || drc_variant == "mutual") {
        const TwoColoring c = load_coloring(drc_input);
        const DrcParams p = drc_params(cfg, c.m);
        const std::size_t r = cfg.r == 0 ? 2 : cfg.r;
        inputs["drc_params"] = p;
        return run("drc", common, cfg, inputs, [&](std::uint64_t seed) {
          const auto o = drc_variant == "chain" ? drc_chain(c, r, p, seed) : drc_mutual(c, r, p, seed);
          return Trial{{{"success", o.success}, {"failure", o.failure}, {"outcome", o}}, o.success};
        });
      }
      const Graph g = load_graph(drc_input);
      return run("drc", common, cfg, inputs, [&](std::uint64_t seed) {
        const auto [v1, v2] = random_halves(g.n(), derive_seed(seed, {0}));
        DrcParams p = drc_params(cfg, v2.size());
        if (p.alpha == 0) p.alpha = cross_density(g, v1, v2);
        DrcOutcome o;
        if (drc_variant == "bipartite") o = drc_bipartite(g, v1, v2, p, derive_seed(seed, {1}));
        else if (drc_variant == "general") o = drc_general(g, v1, v2, p, derive_seed(seed, {1}));
        else o = drc_pair(g, v1, v2, p, derive_seed(seed, {1}));
        return Trial{{{"success", o.success},
                      {"failure", o.failure},
                      {"drc_params", p},
                      {"v1", set_json(v1)},
                      {"v2", set_json(v2)},
                      {"outcome", o}},
                     o.success};
      });
    }

    if (*part) {
      const Graph g = load_graph(part_host);
      const Graph h = load_graph(part_pattern);
      const auto deg = degeneracy(h);
      const std::size_t d = cfg.d == 0 ? std::max<std::size_t>(deg.d, 1) : cfg.d;
      const auto colors = pattern_colors(h, d, cfg.r);
      const std::size_t r = cfg.r ? cfg.r : std::max<std::size_t>(2, color_count(colors));
      const EmbedPlan plan = pattern_plan(h, colors, d, r);
      const double theta = cfg.theta > 0 ? cfg.theta : cfg.xi * cfg.xi * static_cast<double>(g.n());
      const PartitionParams pp = detail::partition_params(cfg, plan, plan.forward.d_pad, theta);
      return run("partition", common, cfg, {{"host", part_host}, {"pattern", part_pattern}}, [&](std::uint64_t seed) {
        std::vector<Vertex> perm(g.n());
        for (Vertex v = 0; v < g.n(); ++v) perm[v] = v;
        Rng rng(derive_seed(seed, {0}));
        for (std::size_t i = g.n(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<VertexSet> blocks(r, VertexSet(g.n()));
        for (std::size_t i = 0; i < g.n(); ++i) blocks[i * r / g.n()].insert(perm[i]);
        const auto po = random_partition(g, blocks, plan.partition.k, pp, derive_seed(seed, {1}));
        return Trial{{{"success", po.success}, {"failure", po.failure}, {"blocks", sets_json(blocks)}, {"outcome", po}},
                     po.success};
      });
    }

    if (*emb) {
      const Graph g = load_graph(emb_host);
      const Graph h = load_graph(emb_pattern);
      json inputs = {{"host", emb_host}, {"pattern", emb_pattern}, {"mode", emb_one_side ? "one-side" : "pipeline"}};
      if (!emb_one_side) {
        return run("embed", common, cfg, inputs, [&](std::uint64_t seed) {
          const auto res = embed_bipartite_pipeline(g, h, cfg, seed);
          return Trial{json(res), res.success};
        });
      }
      const auto hs = bipartition(g), ps = bipartition(h);
      if (hs.empty()) throw InputError("host is not bipartite");
      if (ps.empty()) throw InputError("pattern is not bipartite");
      VertexSet v1(g.n()), v2(g.n()), w1(h.n()), w2(h.n());
      for (Vertex v = 0; v < g.n(); ++v) (hs[v] == 0 ? v1 : v2).insert(v);
      for (Vertex x = 0; x < h.n(); ++x) (ps[x] == 0 ? w1 : w2).insert(x);
      if (v1.size() < v2.size()) std::swap(v1, v2);
      if (w1.size() < w2.size()) std::swap(w1, w2);
      std::size_t d = 0;
      w1.for_each([&](Vertex x) { d = std::max(d, h.degree_in(x, w2)); });
      DrcParams p = drc_params(cfg, v2.size());
      p.d = cfg.d == 0 ? std::max<std::size_t>(d, 1) : cfg.d;
      if (p.alpha == 0) p.alpha = cross_density(g, v1, v2);
      inputs["eps"] = num(emb_eps);
      inputs["drc_params"] = p;
      return run("embed", common, cfg, inputs, [&](std::uint64_t seed) {
        const auto o = embed_one_side_bounded(g, v1, v2, h, w1, w2, emb_eps, p, seed);
        json rep = o;
        if (o.success) rep["verification"] = verify_embedding(h, g, o.map);
        return Trial{rep, o.success};
      });
    }

    if (*ram) {
      const TwoColoring c = load_coloring(ram_coloring);
      const Graph h = load_graph(ram_pattern);
      return run("ramsey", common, cfg, {{"coloring", ram_coloring}, {"pattern", ram_pattern}},
                 [&](std::uint64_t seed) {
                   const auto res = find_monochromatic(c, h, cfg, seed);
                   return Trial{json(res), res.success};
                 });
    }

    // verify
    const Graph h = load_graph(ver_pattern);
    const json report = load_json(ver_report);
    const json& body = report.contains("result") ? report["result"] : report;
    if (!body.contains("map")) throw InputError(ver_report + ": no \"map\" field");
    const auto map = map_from_json(body["map"]);
    Graph host;
    json inputs = {{"host", ver_host}, {"pattern", ver_pattern}, {"report", ver_report}};
    if (is_coloring_file(ver_host)) {
      const TwoColoring c = load_coloring(ver_host);
      const int color = body.value("color", -1);
      if (color != 0 && color != 1) throw InputError(ver_report + ": coloring hosts need \"color\" 0 or 1");
      host = color == 0 ? c.red : c.blue();
      inputs["color"] = color;
    } else {
      host = load_graph(ver_host);
    }
    if (map.size() != h.n()) throw InputError("map has " + std::to_string(map.size()) + " entries, pattern has " +
                                              std::to_string(h.n()) + " vertices");
    return run("verify", common, cfg, inputs, [&](std::uint64_t) {
      const auto v = verify_embedding(h, host, map);
      return Trial{{{"success", v.ok}, {"failure", v.reason}, {"verification", v}}, v.ok};
    });
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitFailure;
  }
}
