// Copyright 2026 The motifcc Authors.
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

// Command-line front end.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "motifcc/errors.h"
#include "motifcc/lp_model.h"
#include "motifcc/oracles.h"
#include "motifcc/pipeline.h"
#include "motifcc/rounding.h"
#include "motifcc/simplex.h"
#include "motifcc/weight_config.h"

namespace {

using nlohmann::json;
using namespace motifcc;

struct InstanceFlags {
  std::string input;
  std::string generator;
  bool undirected = false;
  bool zero_based = false;
};

struct WeightFlags {
  std::string weights;
  std::string method;
  std::optional<int> layer_k;
};

struct RoundFlags {
  std::optional<double> alpha;
  std::optional<double> beta;
  bool auto_params = false;
  std::string pivot = "lowest";
  std::string leftover = "cluster";
  std::uint64_t seed = 0;
};

struct SolverFlags {
  std::int64_t max_iterations = SolverConfig{}.max_iterations;
  std::int64_t log_interval = 0;
  bool no_perturb = false;
};

void add_instance_flags(CLI::App* app, InstanceFlags& f) {
  app->add_option("--input", f.input, "edge list (\"u v\" per line)");
  app->add_option("--generator", f.generator,
                  "fig2a | fig2b:<n> | anomaly:<seed> | layered-flow");
  app->add_flag("--undirected", f.undirected, "add the reverse of each arc");
  app->add_flag("--zero-based", f.zero_based, "input labels start at 0");
}

void add_weight_flags(CLI::App* app, WeightFlags& f) {
  app->add_option("--weights", f.weights, "weight config: JSON file or inline JSON");
  app->add_option("--method", f.method, "weight preset CC | MCC | MMCC");
  app->add_option("--layer-k", f.layer_k, "keep only the layer of this size");
}

void add_round_flags(CLI::App* app, RoundFlags& f) {
  auto* alpha = app->add_option("--alpha", f.alpha, "rounding radius");
  auto* beta = app->add_option("--beta", f.beta, "singleton threshold factor");
  app->add_flag("--auto-params", f.auto_params, "pick alpha and beta automatically (default)")
      ->excludes(alpha)
      ->excludes(beta);
  app->add_option("--pivot", f.pivot, "lowest | random");
  app->add_option("--leftover", f.leftover, "cluster | singletons");
  app->add_option("--seed", f.seed, "seed for random pivots");
}

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--max-iterations", f.max_iterations, "simplex iteration cap");
  app->add_option("--log-interval", f.log_interval, "progress line every N iterations");
  app->add_flag("--no-perturb", f.no_perturb, "disable bound perturbation");
}

InstanceSpec to_spec(const InstanceFlags& f) {
  InstanceSpec spec;
  spec.input_path = f.input;
  spec.generator = f.generator;
  spec.edge_options.undirected = f.undirected;
  spec.edge_options.zero_based = f.zero_based;
  return spec;
}

// A --weights value starting with '{' or '[' is inline JSON, anything else a path.
void apply_weights(const std::string& value, RunConfig& config) {
  const auto first = value.find_first_not_of(" \t\n");
  if (first != std::string::npos && (value[first] == '{' || value[first] == '[')) {
    try {
      config.weights_json = json::parse(value);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("inline weights are not valid JSON: ") + e.what());
    }
  } else {
    config.weights_path = value;
  }
}

void apply_weight_flags(const WeightFlags& f, RunConfig& config) {
  if (!f.weights.empty()) apply_weights(f.weights, config);
  if (!f.method.empty()) config.method = karate_method_from_string(f.method);
  config.layer_k = f.layer_k;
}

void apply_round_flags(const RoundFlags& f, RunConfig& config) {
  config.alpha = f.alpha;
  config.beta = f.beta;
  config.rounding.pivot = pivot_rule_from_string(f.pivot);
  config.rounding.leftover = leftover_policy_from_string(f.leftover);
  config.rounding.seed = f.seed;
}

void apply_solver_flags(const SolverFlags& f, RunConfig& config) {
  config.solver.max_iterations = f.max_iterations;
  config.solver.log_interval = f.log_interval;
  config.solver.perturb = !f.no_perturb;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

LpProblem read_lp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open LP file '" + path + "'");
  return read_lp(in);
}

json clusters_json(const Partition& p) {
  json out = json::array();
  for (const auto& c : p.clusters()) out.push_back(c);
  return out;
}

Partition partition_from_json(const json& doc, int n) {
  const json& clusters = doc.is_object() ? doc.at("clusters") : doc;
  return Partition::from_clusters(n, clusters.get<std::vector<std::vector<VertexId>>>());
}

// Solution files: {"status", "objective", "iterations", "variables": {name: value}}.
json solution_json(const LpProblem& lp, const SolverResult& r) {
  json vars = json::object();
  for (int i = 0; i < lp.num_variables(); ++i) {
    vars[lp.variable(i).key.name()] = r.solution.values[static_cast<std::size_t>(i)];
  }
  return {{"status", std::string(to_string(r.status))},
          {"objective", r.solution.objective_value},
          {"iterations", r.iterations},
          {"variables", vars}};
}

std::vector<double> values_from_json(const LpProblem& lp, const json& doc) {
  std::vector<double> values(static_cast<std::size_t>(lp.num_variables()), 0.0);
  std::vector<bool> seen(values.size(), false);
  for (const auto& [name, value] : doc.at("variables").items()) {
    const auto index = lp.find(var_key_from_name(name));
    if (!index) throw ConfigError("solution names unknown variable '" + name + "'");
    values[static_cast<std::size_t>(*index)] = value.get<double>();
    seen[static_cast<std::size_t>(*index)] = true;
  }
  for (int i = 0; i < lp.num_variables(); ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      throw ConfigError("solution lacks variable '" + lp.variable(i).key.name() + "'");
    }
  }
  return values;
}

// Largest tuple size among the LP variables, 2 when there are only pairs.
int largest_tuple(const LpProblem& lp) {
  int k = 2;
  for (const auto& v : lp.variables()) {
    if (v.key.kind == VarKind::kTuple) k = std::max(k, static_cast<int>(v.key.vertices.size()));
  }
  return k;
}

bool has_pair_variables(const LpProblem& lp) {
  for (const auto& v : lp.variables()) {
    if (v.key.kind == VarKind::kPair) return true;
  }
  return false;
}

// Instance and weights for the subcommands that score partitions.
struct Scored {
  Instance instance;
  MixedWeights mixed;
};

Scored load_scored(const InstanceFlags& inst, const WeightFlags& weights) {
  RunConfig config;
  config.instance = to_spec(inst);
  apply_weight_flags(weights, config);
  Instance instance = load_instance(config.instance);
  MixedWeights mixed = resolve_weights(config, instance);
  return Scored{std::move(instance), std::move(mixed)};
}

int cmd_solve(const InstanceFlags& inst, const WeightFlags& weights, const RoundFlags& round,
              const SolverFlags& solver, const std::string& relaxation, double tol,
              const std::string& lp_path, const std::string& write_lp_path,
              const std::string& reference, const std::string& trace, bool no_timing,
              const std::string& out) {
  RunConfig config;
  apply_solver_flags(solver, config);
  if (!lp_path.empty()) {
    const LpProblem lp = read_lp_file(lp_path);
    const SolverResult r = solve(lp, config.solver);
    write_text(out, solution_json(lp, r).dump(2) + "\n");
    if (r.status != SolveStatus::kOptimal) {
      std::cerr << "error: solve: LP ended " << to_string(r.status) << "\n";
      return kExitSolver;
    }
    const ViolationReport check = verify_solution(lp, r.solution, tol);
    if (!check.feasible()) {
      std::cerr << "error: solve: " << check.violations.front().description << "\n";
      return kExitSolver;
    }
    return kExitOk;
  }
  config.instance = to_spec(inst);
  apply_weight_flags(weights, config);
  apply_round_flags(round, config);
  config.relaxation = relaxation_from_string(relaxation);
  config.certificate_tolerance = tol;
  config.reference_path = reference;
  if (!write_lp_path.empty()) {
    const Instance instance = load_instance(config.instance);
    const LpProblem lp = build_relaxation(config.relaxation, resolve_weights(config, instance),
                                          config.limits);
    std::ofstream lp_out(write_lp_path);
    if (!lp_out) throw ConfigError("cannot write '" + write_lp_path + "'");
    write_lp(lp_out, lp);
  }
  const Report report = run(config);
  write_text(out, to_json(report, !no_timing).dump(2) + "\n");
  if (!trace.empty()) {
    std::ostringstream lines;
    report.trace.write_json_lines(lines);
    write_text(trace, lines.str());
  }
  return kExitOk;
}

struct RoundCmd {
  std::string lp_path;
  std::string solution_path;
  std::string mode;
  double lambda = 1.0;
  std::string trace;
  std::string out;
  double tol = 1e-6;
};

int cmd_round(const RoundCmd& cmd, const InstanceFlags& inst, const WeightFlags& weights,
              const RoundFlags& round) {
  const LpProblem lp = read_lp_file(cmd.lp_path);
  const json solution = read_json_file(cmd.solution_path);
  const std::vector<double> values = values_from_json(lp, solution);
  const bool pairs = has_pair_variables(lp);
  const int k = largest_tuple(lp);

  RoundingParams params;
  double ratio = 0.0;
  if (round.alpha || round.beta) {
    if (pairs && (!round.alpha || !round.beta)) {
      throw ConfigError("pair rounding needs both --alpha and --beta");
    }
    params.alpha = *round.alpha;
    params.beta = round.beta.value_or(0.0);
    ratio = pairs ? 1.0 / (params.alpha * params.beta) : 2.0 / params.alpha;
  } else {
    ParamMode mode = pairs ? ParamMode::kMccPairLp : ParamMode::kMccTupleLp;
    if (!cmd.mode.empty()) mode = param_mode_from_string(cmd.mode);
    const Recommendation rec = recommended_params(k, mode, cmd.lambda, lp.num_vertices());
    params = rec.params;
    ratio = rec.ratio;
  }
  RunConfig flags;
  apply_round_flags(round, flags);
  const RoundingResult result =
      pairs ? round_alg2(PairValues::from_solution(lp, values), k, params, flags.rounding)
            : round_alg1(TupleValues::from_solution(lp, values, k), params, flags.rounding);

  json out = {{"clusters", clusters_json(result.partition)},
              {"algorithm", pairs ? "pair" : "tuple"},
              {"k", k},
              {"alpha", params.alpha},
              {"beta", params.beta},
              {"ratio", ratio}};
  int code = kExitOk;
  if (!inst.input.empty() || !inst.generator.empty()) {
    const Scored s = load_scored(inst, weights);
    const double lp_value = lp.objective_at(values);
    const double cost = evaluate_objective(result.partition, s.mixed);
    out["cost"] = cost;
    out["lp_value"] = lp_value;
    try {
      const Certificate cert = certify_cost(cost, lp_value, ratio, cmd.tol);
      out["empirical_ratio"] = cert.empirical_ratio;
    } catch (const CertificateViolationError& e) {
      std::cerr << "error: certify: " << e.what() << "\n";
      code = kExitCertificate;
    }
  }
  write_text(cmd.out, out.dump(2) + "\n");
  if (!cmd.trace.empty()) {
    std::ostringstream lines;
    result.trace.write_json_lines(lines);
    write_text(cmd.trace, lines.str());
  }
  return code;
}

int cmd_exact(const InstanceFlags& inst, const WeightFlags& weights, int max_vertices,
              bool enumerate, const std::string& out) {
  const Scored s = load_scored(inst, weights);
  ExactOptions options;
  options.max_vertices = max_vertices;
  const ClusteringReport r = enumerate ? exact_min_disagree_enumerated(s.mixed, options)
                                       : exact_min_disagree(s.mixed, options);
  const json doc = {{"solver", r.solver},
                    {"clusters", clusters_json(r.partition)},
                    {"cost", r.cost},
                    {"seconds", r.wall_seconds}};
  write_text(out, doc.dump(2) + "\n");
  return kExitOk;
}

struct BaselineCmd {
  std::string kind = "pivot-vertex";
  std::string signs = "graph";
  int runs = 0;
  std::vector<int> first_edge;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_baseline(const BaselineCmd& cmd, const InstanceFlags& inst, const WeightFlags& weights) {
  const Scored s = load_scored(inst, weights);
  if (cmd.kind == "maxagree") {
    const ClusteringReport r = maxagree_2approx(s.mixed);
    const json doc = {{"baseline", cmd.kind},
                      {"clusters", clusters_json(r.partition)},
                      {"cost", r.cost},
                      {"agreement", agreement(r.partition, s.mixed)}};
    write_text(cmd.out, doc.dump(2) + "\n");
    return kExitOk;
  }
  SignedGraph signs(s.instance.graph->num_vertices());
  if (cmd.signs == "graph") {
    signs = SignedGraph::from_graph(*s.instance.graph);
  } else if (cmd.signs == "pairs") {
    const MotifLayer* layer = s.mixed.layer_for(2);
    if (layer == nullptr) throw ConfigError("--signs pairs needs a size-2 weight layer");
    signs = SignedGraph::from_pair_weights(layer->weights);
  } else {
    throw ConfigError("unknown --signs '" + cmd.signs + "' (expected graph, pairs)");
  }
  ClusteringReport r;
  json doc = {{"baseline", cmd.kind}, {"seed", cmd.seed}};
  if (cmd.kind == "pivot-vertex") {
    r = pivot_vertex_baseline(signs, s.mixed, cmd.seed);
    if (cmd.runs > 0) {
      doc["runs"] = cmd.runs;
      doc["expected_cost"] = expected_pivot_vertex_cost(signs, s.mixed, cmd.runs, cmd.seed);
    }
  } else if (cmd.kind == "pivot-edge") {
    std::optional<std::pair<VertexId, VertexId>> first;
    if (!cmd.first_edge.empty()) {
      if (cmd.first_edge.size() != 2) throw ConfigError("--first-edge takes two vertices");
      first = std::make_pair(cmd.first_edge[0], cmd.first_edge[1]);
    }
    r = pivot_edge_baseline(signs, s.mixed, cmd.seed, first);
  } else {
    throw ConfigError("unknown baseline '" + cmd.kind +
                      "' (expected pivot-vertex, pivot-edge, maxagree)");
  }
  doc["clusters"] = clusters_json(r.partition);
  doc["cost"] = r.cost;
  write_text(cmd.out, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_generate(const std::string& generator, const std::string& out) {
  InstanceSpec spec;
  spec.generator = generator;
  const Instance instance = load_instance(spec);
  json manifest = instance.manifest;
  manifest["weights_preset"] = instance.default_preset;
  if (manifest["generator"] == "layered-flow") manifest["layers"] = layered_flow_layers();
  if (manifest["generator"] == "anomaly") {
    std::vector<VertexId> block;
    for (VertexId v = 1; v <= kAnomalySize; ++v) block.push_back(v);
    manifest["planted"] = block;
  }
  std::ostringstream edges;
  edges << "# generator " << generator << "\n";
  write_edge_list(edges, *instance.graph);
  write_text(out, edges.str());
  if (!out.empty() && out != "-") write_text(out + ".json", manifest.dump(2) + "\n");
  return kExitOk;
}

struct CompareCmd {
  std::vector<std::string> methods;
  std::string config_path;
  std::string reference;
  std::string json_out;
  std::string out;
};

// One run of a compare config file:
//   {"name", "method", "weights", "relaxation", "layer_k", "alpha", "beta",
//    "pivot", "seed"}
RunConfig run_from_json(const json& entry, const RunConfig& base) {
  RunConfig config = base;
  if (entry.contains("method")) {
    config.method = karate_method_from_string(entry["method"].get<std::string>());
  }
  if (entry.contains("weights")) {
    const json& w = entry["weights"];
    if (w.is_string()) {
      config.weights_path = w.get<std::string>();
    } else {
      config.weights_json = w;
    }
  }
  if (entry.contains("relaxation")) {
    config.relaxation = relaxation_from_string(entry["relaxation"].get<std::string>());
  }
  if (entry.contains("layer_k")) config.layer_k = entry["layer_k"].get<int>();
  if (entry.contains("alpha")) config.alpha = entry["alpha"].get<double>();
  if (entry.contains("beta")) config.beta = entry["beta"].get<double>();
  if (entry.contains("pivot")) {
    config.rounding.pivot = pivot_rule_from_string(entry["pivot"].get<std::string>());
  }
  if (entry.contains("seed")) config.rounding.seed = entry["seed"].get<std::uint64_t>();
  config.name = entry.value("name", config.method ? std::string(to_string(*config.method))
                                                  : std::string("run"));
  return config;
}

int cmd_compare(const CompareCmd& cmd, const InstanceFlags& inst, const SolverFlags& solver) {
  RunConfig base;
  base.instance = to_spec(inst);
  base.reference_path = cmd.reference;
  apply_solver_flags(solver, base);
  std::vector<RunConfig> configs;
  for (const auto& m : cmd.methods) {
    RunConfig c = base;
    c.method = karate_method_from_string(m);
    c.name = m;
    configs.push_back(c);
  }
  if (!cmd.config_path.empty()) {
    const json doc = read_json_file(cmd.config_path);
    const json& runs = doc.is_object() ? doc.at("runs") : doc;
    for (const auto& entry : runs) configs.push_back(run_from_json(entry, base));
  }
  const ComparisonTable table = compare(configs);
  write_text(cmd.out, table.to_csv());
  if (!cmd.json_out.empty()) write_text(cmd.json_out, table.json.dump(2) + "\n");
  return kExitOk;
}

struct VerifyCmd {
  std::string lp_path;
  std::string solution_path;
  std::string partition_path;
  std::optional<double> lp_value;
  std::optional<double> ratio;
  double tol = 1e-6;
  std::string out;
};

int cmd_verify(const VerifyCmd& cmd, const InstanceFlags& inst, const WeightFlags& weights) {
  json doc = json::object();
  int code = kExitOk;
  if (!cmd.lp_path.empty()) {
    if (cmd.solution_path.empty()) throw ConfigError("--lp needs --solution");
    const LpProblem lp = read_lp_file(cmd.lp_path);
    const std::vector<double> values = values_from_json(lp, read_json_file(cmd.solution_path));
    const ViolationReport report = verify_solution(lp, values, cmd.tol);
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"description", v.description}, {"amount", v.amount}});
    }
    doc["objective"] = lp.objective_at(values);
    doc["violations"] = violations;
    if (!report.feasible()) code = kExitSolver;
  }
  if (!cmd.partition_path.empty()) {
    const Scored s = load_scored(inst, weights);
    const Partition p =
        partition_from_json(read_json_file(cmd.partition_path), s.instance.graph->num_vertices());
    const double cost = evaluate_objective(p, s.mixed);
    doc["cost"] = cost;
    doc["clusters"] = clusters_json(p);
    if (cmd.lp_value && cmd.ratio) {
      try {
        doc["empirical_ratio"] = certify_cost(cost, *cmd.lp_value, *cmd.ratio, cmd.tol).empirical_ratio;
        doc["certified"] = true;
      } catch (const CertificateViolationError& e) {
        std::cerr << "error: certify: " << e.what() << "\n";
        doc["certified"] = false;
        code = kExitCertificate;
      }
    }
  }
  if (doc.empty()) throw ConfigError("verify needs --lp/--solution or --partition");
  write_text(cmd.out, doc.dump(2) + "\n");
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motif correlation clustering: LP relaxations, rounding and baselines."};
  app.require_subcommand(1);

  InstanceFlags inst;
  WeightFlags weights;
  RoundFlags round;
  SolverFlags solver;

  // solve
  std::string relaxation = "LP3";
  double solve_tol = 1e-6;
  std::string lp_path, write_lp_path, reference, trace, out;
  bool no_timing = false;
  auto* solve = app.add_subcommand("solve", "build, solve, round and certify; or solve an LP file");
  add_instance_flags(solve, inst);
  add_weight_flags(solve, weights);
  add_round_flags(solve, round);
  add_solver_flags(solve, solver);
  solve->add_option("--relaxation", relaxation, "LP1 | LP2 | LP3");
  solve->add_option("--tol", solve_tol, "certificate and feasibility tolerance");
  solve->add_option("--lp", lp_path, "solve this LP file and write a solution JSON");
  solve->add_option("--write-lp", write_lp_path, "also write the built LP");
  solve->add_option("--reference", reference, "labels file to score against");
  solve->add_option("--trace", trace, "rounding trace (JSON lines)");
  solve->add_flag("--no-timing", no_timing, "leave timings out of the report");
  solve->add_option("--out", out, "report path (default stdout)");

  // round
  RoundCmd round_cmd;
  InstanceFlags round_inst;
  WeightFlags round_weights;
  RoundFlags round_flags;
  auto* round_app = app.add_subcommand("round", "round an LP solution");
  round_app->add_option("--lp", round_cmd.lp_path, "LP file")->required();
  round_app->add_option("--solution", round_cmd.solution_path, "solution JSON")->required();
  round_app->add_option("--mode", round_cmd.mode, "mcc-lp1 | mcc-lp2 | mmcc | edge-plus-k");
  round_app->add_option("--lambda", round_cmd.lambda, "layer ratio for edge-plus-k");
  round_app->add_option("--tol", round_cmd.tol, "certificate tolerance");
  round_app->add_option("--trace", round_cmd.trace, "rounding trace (JSON lines)");
  round_app->add_option("--out", round_cmd.out, "output path (default stdout)");
  add_instance_flags(round_app, round_inst);
  add_weight_flags(round_app, round_weights);
  add_round_flags(round_app, round_flags);

  // exact
  InstanceFlags exact_inst;
  WeightFlags exact_weights;
  int max_vertices = ExactOptions{}.max_vertices;
  bool enumerate = false;
  std::string exact_out;
  auto* exact = app.add_subcommand("exact", "exact minimum disagreement (small n)");
  add_instance_flags(exact, exact_inst);
  add_weight_flags(exact, exact_weights);
  exact->add_option("--max-vertices", max_vertices, "largest n accepted");
  exact->add_flag("--enumerate", enumerate, "plain enumeration instead of branch and bound");
  exact->add_option("--out", exact_out, "output path (default stdout)");

  // baseline
  BaselineCmd baseline_cmd;
  InstanceFlags baseline_inst;
  WeightFlags baseline_weights;
  auto* baseline = app.add_subcommand("baseline", "pivoting and MaxAgree baselines");
  add_instance_flags(baseline, baseline_inst);
  add_weight_flags(baseline, baseline_weights);
  baseline->add_option("--kind", baseline_cmd.kind, "pivot-vertex | pivot-edge | maxagree");
  baseline->add_option("--signs", baseline_cmd.signs, "graph | pairs");
  baseline->add_option("--runs", baseline_cmd.runs, "also report the mean cost over N seeds");
  baseline->add_option("--first-edge", baseline_cmd.first_edge, "first pivot edge u v")
      ->expected(2);
  baseline->add_option("--seed", baseline_cmd.seed, "random seed");
  baseline->add_option("--out", baseline_cmd.out, "output path (default stdout)");

  // generate
  std::string gen_spec, gen_out;
  auto* generate = app.add_subcommand("generate", "write a synthetic instance and its manifest");
  generate->add_option("--generator", gen_spec, "fig2a | fig2b:<n> | anomaly:<seed> | layered-flow")
      ->required();
  generate->add_option("--out", gen_out, "edge list path; the manifest goes to <out>.json");

  // compare
  CompareCmd compare_cmd;
  InstanceFlags compare_inst;
  SolverFlags compare_solver;
  auto* compare_app = app.add_subcommand("compare", "side-by-side runs on one instance");
  add_instance_flags(compare_app, compare_inst);
  add_solver_flags(compare_app, compare_solver);
  compare_app->add_option("--method", compare_cmd.methods, "presets to compare, e.g. CC MCC MMCC");
  compare_app->add_option("--config", compare_cmd.config_path, "JSON list of runs");
  compare_app->add_option("--reference", compare_cmd.reference, "labels file to score against");
  compare_app->add_option("--json", compare_cmd.json_out, "full reports as JSON");
  compare_app->add_option("--out", compare_cmd.out, "CSV path (default stdout)");

  // verify
  VerifyCmd verify_cmd;
  InstanceFlags verify_inst;
  WeightFlags verify_weights;
  auto* verify = app.add_subcommand("verify", "check an LP solution or certify a partition");
  add_instance_flags(verify, verify_inst);
  add_weight_flags(verify, verify_weights);
  verify->add_option("--lp", verify_cmd.lp_path, "LP file");
  verify->add_option("--solution", verify_cmd.solution_path, "solution JSON");
  verify->add_option("--partition", verify_cmd.partition_path, "JSON with \"clusters\"");
  verify->add_option("--lp-value", verify_cmd.lp_value, "LP lower bound");
  verify->add_option("--ratio", verify_cmd.ratio, "approximation ratio to certify");
  verify->add_option("--tol", verify_cmd.tol, "tolerance");
  verify->add_option("--out", verify_cmd.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*solve) {
      return cmd_solve(inst, weights, round, solver, relaxation, solve_tol, lp_path, write_lp_path,
                       reference, trace, no_timing, out);
    }
    if (*round_app) return cmd_round(round_cmd, round_inst, round_weights, round_flags);
    if (*exact) return cmd_exact(exact_inst, exact_weights, max_vertices, enumerate, exact_out);
    if (*baseline) return cmd_baseline(baseline_cmd, baseline_inst, baseline_weights);
    if (*generate) return cmd_generate(gen_spec, gen_out);
    if (*compare_app) return cmd_compare(compare_cmd, compare_inst, compare_solver);
    if (*verify) return cmd_verify(verify_cmd, verify_inst, verify_weights);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitFailure;
}
