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

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ramsey/decompose.hpp"
#include "ramsey/defect.hpp"
#include "ramsey/drc.hpp"
#include "ramsey/embed.hpp"
#include "ramsey/error.hpp"
#include "ramsey/pipeline.hpp"
#include "ramsey/prune.hpp"

// JSON views of the report types. Infinite values are written as the string
// "inf" since JSON has no infinity.
namespace ramsey {

using nlohmann::json;

inline json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double get_num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    throw InputError("expected a number, got \"" + s + "\"");
  }
  if (!j.is_number()) throw InputError("expected a number");
  return j.get<double>();
}

inline json set_json(const VertexSet& s) { return s.to_vector(); }

inline json sets_json(const std::vector<VertexSet>& ss) {
  json a = json::array();
  for (const auto& s : ss) a.push_back(set_json(s));
  return a;
}

inline json map_json(const std::vector<Vertex>& map) {
  json a = json::array();
  for (Vertex v : map) a.push_back(v == kUnmapped ? json(nullptr) : json(v));
  return a;
}

inline std::vector<Vertex> map_from_json(const json& j) {
  if (!j.is_array()) throw InputError("embedding map must be an array");
  std::vector<Vertex> map;
  for (const auto& v : j) map.push_back(v.is_null() ? kUnmapped : v.get<Vertex>());
  return map;
}

inline void to_json(json& j, const EvalBudget& b) {
  j = {{"exact_limit", num(b.exact_limit)}, {"samples", b.samples}, {"safety_sigmas", num(b.safety_sigmas)}};
}

inline void from_json(const json& j, EvalBudget& b) {
  if (j.contains("exact_limit")) b.exact_limit = get_num(j.at("exact_limit"));
  if (j.contains("samples")) b.samples = j.at("samples").get<std::size_t>();
  if (j.contains("safety_sigmas")) b.safety_sigmas = get_num(j.at("safety_sigmas"));
}

inline void to_json(json& j, const MomentResult& m) {
  j = {{"value", num(m.value)},
       {"mode", m.exact() ? "exact" : "sampled"},
       {"sample_count", m.sample_count},
       {"std_error", num(m.std_error)},
       {"infinite_hits", m.infinite_hits},
       {"tuples", num(m.tuples)},
       {"seed", m.seed}};
}

inline void to_json(json& j, const Guarantee& g) {
  j = {{"name", g.name}, {"relation", g.relation}, {"measured", num(g.measured)}, {"bound", num(g.bound)},
       {"holds", g.holds}};
  if (g.moment) j["moment"] = *g.moment;
}

inline void to_json(json& j, const ChainSchedule& c) {
  j = {{"t", c.t}, {"d", c.d}, {"theta0", num(c.theta0)}, {"theta1", num(c.theta1)}, {"overridden", c.overridden},
       {"invariant_holds", c.invariant_holds()}};
}

inline void to_json(json& j, const DrcOutcome& o) {
  j = {{"success", o.success}, {"color", o.color}, {"sets", sets_json(o.sets)}, {"witnesses", o.witnesses},
       {"guarantees", o.guarantees}, {"restarts", o.restarts}, {"failure", o.failure}};
  if (o.schedule) j["schedule"] = *o.schedule;
}

inline void to_json(json& j, const DrcParams& p) {
  j = {{"d", p.d},         {"s", p.s},         {"t", p.t},
       {"eta", num(p.eta)}, {"eps", num(p.eps)}, {"alpha", num(p.alpha)},
       {"xi", num(p.xi)},   {"theta", num(p.theta)}, {"max_restarts", p.max_restarts},
       {"candidates", p.candidates}, {"t_schedule", p.t_schedule}, {"budget", p.budget}};
}

inline void from_json(const json& j, DrcParams& p) {
  if (j.contains("d")) p.d = j.at("d").get<std::size_t>();
  if (j.contains("s")) p.s = j.at("s").get<int>();
  if (j.contains("t")) p.t = j.at("t").get<std::size_t>();
  if (j.contains("eta")) p.eta = get_num(j.at("eta"));
  if (j.contains("eps")) p.eps = get_num(j.at("eps"));
  if (j.contains("alpha")) p.alpha = get_num(j.at("alpha"));
  if (j.contains("xi")) p.xi = get_num(j.at("xi"));
  if (j.contains("theta")) p.theta = get_num(j.at("theta"));
  if (j.contains("max_restarts")) p.max_restarts = j.at("max_restarts").get<std::size_t>();
  if (j.contains("candidates")) p.candidates = j.at("candidates").get<std::size_t>();
  if (j.contains("t_schedule")) p.t_schedule = j.at("t_schedule").get<std::vector<std::size_t>>();
  if (j.contains("budget")) p.budget = j.at("budget").get<EvalBudget>();
}

inline void to_json(json& j, const TransferReport& r) {
  j = {{"mean", num(r.mean)}, {"std_error", num(r.std_error)}, {"exact", num(r.exact)},
       {"gap", num(r.gap)},   {"trials", r.trials},             {"seed", r.seed}};
}

inline void to_json(json& j, const PruneOutcome& o) {
  j = {{"success", o.success}, {"sets", sets_json(o.sets)}, {"removed", set_json(o.removed)},
       {"removed_per", o.removed_per}, {"guarantees", o.guarantees}, {"failure", o.failure}};
}

inline void to_json(json& j, const PartitionOutcome& o) {
  std::vector<json> th;
  for (double x : o.theta_i) th.push_back(num(x));
  j = {{"success", o.success},
       {"k", o.k},
       {"r", o.r},
       {"sets", sets_json(o.sets)},
       {"theta_i", th},
       {"seed", o.seed},
       {"restart", o.restart},
       {"restarts", o.restarts},
       {"e1", o.e1},
       {"e2", o.e2},
       {"e3", o.e3},
       {"p_floor_met", o.p_floor_met},
       {"e1_samples", o.e1_samples},
       {"e1_worst_fraction", num(o.e1_worst_fraction)},
       {"dominance_checked", o.dominance_checked},
       {"dominance_violations", o.dominance_violations},
       {"event_failures", o.event_failures},
       {"guarantees", o.guarantees},
       {"conclusions", o.conclusions},
       {"failure", o.failure}};
}

inline void to_json(json& j, const LayeredPartition& p) {
  json layers = json::array();
  for (std::size_t i = 0; i < p.k; ++i)
    for (std::size_t c = 0; c < p.r; ++c)
      layers.push_back({{"level", i + 1}, {"color", c + 1}, {"size", p.layers[p.flat(i, c)].size()},
                        {"vertices", set_json(p.layers[p.flat(i, c)])}});
  std::vector<std::vector<std::size_t>> assignment;
  for (Vertex v = 0; v < p.n; ++v) assignment.push_back({p.level_of(v) + 1, p.color_of(v) + 1});
  j = {{"n", p.n}, {"k", p.k}, {"r", p.r}, {"d", p.d}, {"level_sizes", p.level_sizes},
       {"layers", layers}, {"assignment", assignment}};
}

inline void to_json(json& j, const ForwardPlan& f) {
  j = {{"d_pad", f.d_pad}, {"dummy_count", f.dummy_count}, {"max_forward", f.max_forward()},
       {"forward", f.forward}, {"padded", f.padded}};
}

inline void to_json(json& j, const Placement& p) {
  j = {{"x", p.x},
       {"layer", p.layer},
       {"step", step_name(p.step)},
       {"omega", num(p.omega)},
       {"neighborhood", p.neighborhood},
       {"free", p.free},
       {"image", p.image == kUnmapped ? json(nullptr) : json(p.image)}};
}

inline void to_json(json& j, const EmbedState& s) {
  std::vector<json> om, la;
  for (double x : s.omega) om.push_back(num(x));
  for (double x : s.lambda) la.push_back(num(x));
  j = {{"success", s.success}, {"seed", s.seed}, {"map", map_json(s.map)}, {"omega", om}, {"lambda", la},
       {"log", s.log}};
  if (!s.success) j["first_failure"] = s.first_failure;
}

inline void to_json(json& j, const LayerCertificate& l) {
  j = {{"layer", l.layer}, {"pattern_size", l.pattern_size}, {"sum", num(l.sum)}, {"bound", num(l.bound)},
       {"precondition", l.precondition}, {"passes", l.passes}};
}

inline void to_json(json& j, const Certificate& c) {
  j = {{"s", c.s}, {"all_pass", c.all_pass()}, {"layers", c.layers}};
}

inline void to_json(json& j, const Verification& v) {
  j = {{"ok", v.ok}};
  if (!v.ok) j.update({{"reason", v.reason}, {"u", v.u}, {"v", v.v}});
}

inline void to_json(json& j, const EmbedPlan& p) {
  std::vector<json> th;
  for (double x : p.thetas) th.push_back(num(x));
  std::vector<std::size_t> sizes;
  for (const auto& t : p.targets) sizes.push_back(t.size());
  j = {{"partition", p.partition}, {"forward", p.forward}, {"target_sizes", sizes}, {"thetas", th},
       {"top_layer", p.top_layer()}, {"gamma", num(plan_gamma(p))}};
}

inline void to_json(json& j, const OneSideOutcome& o) {
  j = {{"success", o.success},
       {"map", map_json(o.map)},
       {"drc", o.drc},
       {"attempts", o.attempts},
       {"best_sum", num(o.best_sum)},
       {"threshold", num(o.threshold)},
       {"feasibility_violations", o.feasibility_violations},
       {"order", o.order},
       {"failure", o.failure}};
}

inline void to_json(json& j, const PipelineConfig& c) {
  std::vector<json> p;
  for (double x : c.p) p.push_back(num(x));
  j = {{"d", c.d},
       {"r", c.r},
       {"s", c.s},
       {"t", c.t},
       {"theta", num(c.theta)},
       {"eta", num(c.eta)},
       {"eps", num(c.eps)},
       {"eps_prime", num(c.eps_prime)},
       {"xi", num(c.xi)},
       {"alpha", num(c.alpha)},
       {"p", p},
       {"t_schedule", c.t_schedule},
       {"prune", c.prune},
       {"fallback", c.fallback},
       {"fallback_limit", c.fallback_limit},
       {"fallback_nodes", c.fallback_nodes},
       {"bound_diagnostic", c.bound_diagnostic},
       {"drc_restarts", c.drc_restarts},
       {"partition_restarts", c.partition_restarts},
       {"embed_attempts", c.embed_attempts},
       {"outer_retries", c.outer_retries},
       {"e1_samples", c.e1_samples},
       {"e1_tolerance", num(c.e1_tolerance)},
       {"e2_cap", c.e2_cap},
       {"budget", c.budget}};
}

// Unknown keys are rejected so that a misspelled parameter cannot be silently ignored.
inline void from_json(const json& j, PipelineConfig& c) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "d") c.d = value.get<std::size_t>();
    else if (key == "r") c.r = value.get<std::size_t>();
    else if (key == "s") c.s = value.get<int>();
    else if (key == "t") c.t = value.get<std::size_t>();
    else if (key == "theta") c.theta = get_num(value);
    else if (key == "eta") c.eta = get_num(value);
    else if (key == "eps") c.eps = get_num(value);
    else if (key == "eps_prime") c.eps_prime = get_num(value);
    else if (key == "xi") c.xi = get_num(value);
    else if (key == "alpha") c.alpha = get_num(value);
    else if (key == "p") {
      c.p.clear();
      for (const auto& x : value) c.p.push_back(get_num(x));
    } else if (key == "t_schedule") c.t_schedule = value.get<std::vector<std::size_t>>();
    else if (key == "prune") c.prune = value.get<bool>();
    else if (key == "fallback") c.fallback = value.get<bool>();
    else if (key == "fallback_limit") c.fallback_limit = value.get<std::size_t>();
    else if (key == "fallback_nodes") c.fallback_nodes = value.get<std::size_t>();
    else if (key == "bound_diagnostic") c.bound_diagnostic = value.get<bool>();
    else if (key == "drc_restarts") c.drc_restarts = value.get<std::size_t>();
    else if (key == "partition_restarts") c.partition_restarts = value.get<std::size_t>();
    else if (key == "embed_attempts") c.embed_attempts = value.get<std::size_t>();
    else if (key == "outer_retries") c.outer_retries = value.get<std::size_t>();
    else if (key == "e1_samples") c.e1_samples = value.get<std::size_t>();
    else if (key == "e1_tolerance") c.e1_tolerance = get_num(value);
    else if (key == "e2_cap") c.e2_cap = value.get<std::size_t>();
    else if (key == "budget") c.budget = value.get<EvalBudget>();
    else if (key == "comment") continue;
    else throw InputError("unknown config key \"" + key + "\"");
  }
}

inline void to_json(json& j, const StageReport& s) {
  j = {{"name", s.name}, {"success", s.success}, {"restarts", s.restarts}, {"guarantees", s.guarantees},
       {"note", s.note}};
}

inline void to_json(json& j, const ReferenceParameters& r) {
  j = {{"t", r.t}, {"s", r.t}, {"log2_eta", num(r.log2_eta)}, {"log2_theta_over_m", num(r.log2_theta_over_m)},
       {"log2_xi_at_c_1", num(r.log2_xi)}};
}

inline void to_json(json& j, const PipelineResult& r) {
  j = {{"success", r.success},
       {"color", r.color},
       {"map", map_json(r.map)},
       {"seed", r.seed},
       {"arity", r.d},
       {"r", r.r},
       {"theta", num(r.theta)},
       {"outer_attempts", r.outer_attempts},
       {"embed_runs", r.embed_runs},
       {"lazy_e1_checked", r.lazy_e1_checked},
       {"lazy_e1_violations", r.lazy_e1_violations},
       {"used_fallback", r.used_fallback},
       {"stages", r.stages},
       {"reference_parameters", r.reference},
       {"failed_stage", r.failed_stage},
       {"failure", r.failure}};
  if (r.plan) j["plan"] = *r.plan;
  if (r.state) j["state"] = *r.state;
  if (r.certificate) j["certificate"] = *r.certificate;
  if (r.mu) j["mu_4d"] = num(*r.mu);
  if (r.bound) j["failure_bound"] = num(*r.bound);
  if (r.verification) j["verification"] = *r.verification;
}

// Reads a JSON file; unreadable files and malformed JSON are input errors.
inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline PipelineConfig load_config(const std::string& path) {
  try {
    return load_json(path).get<PipelineConfig>();
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace ramsey
