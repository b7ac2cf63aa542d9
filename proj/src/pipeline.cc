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

#include "motifcc/pipeline.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>

#include "motifcc/errors.h"
#include "motifcc/oracles.h"
#include "motifcc/weight_config.h"

namespace motifcc {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs `body`, rethrowing any failure as a StageError for `stage`.
template <typename Body>
auto stage(const std::string& name, Body body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what(), exit_code_for(e));
  }
}

json partition_json(const Partition& p) {
  json clusters = json::array();
  for (const auto& c : p.clusters()) clusters.push_back(c);
  return clusters;
}

// Graph identity for comparisons.
bool same_graph(const DirectedGraph& a, const DirectedGraph& b) {
  return a.num_vertices() == b.num_vertices() && a.arcs() == b.arcs();
}

// Maximum-weight assignment of rows to columns on a square matrix
// (Hungarian method with potentials, minimizing the negated weights).
std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weight) {
  const int size = static_cast<int>(weight.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(size) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(size) + 1, 0.0);
  std::vector<int> match(static_cast<std::size_t>(size) + 1, 0);  // column -> row
  std::vector<int> way(static_cast<std::size_t>(size) + 1, 0);
  auto cost = [&](int i, int j) {
    return -weight[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  };
  for (int i = 1; i <= size; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(size) + 1, inf);
    std::vector<bool> used(static_cast<std::size_t>(size) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const int i0 = match[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= size; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0, j) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= size; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(size), -1);
  for (int j = 1; j <= size; ++j) {
    row_to_col[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] = j - 1;
  }
  return row_to_col;
}

std::string format_number(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

}  // namespace

std::string_view to_string(Relaxation r) {
  switch (r) {
    case Relaxation::kLp1: return "LP1";
    case Relaxation::kLp2: return "LP2";
    case Relaxation::kLp3: return "LP3";
  }
  return "LP3";
}

Relaxation relaxation_from_string(std::string_view name) {
  if (name == "LP1" || name == "lp1") return Relaxation::kLp1;
  if (name == "LP2" || name == "lp2") return Relaxation::kLp2;
  if (name == "LP3" || name == "lp3") return Relaxation::kLp3;
  throw ConfigError("unknown relaxation '" + std::string(name) + "' (expected LP1, LP2, LP3)");
}

int exit_code_for(const std::exception& e) {
  if (const auto* s = dynamic_cast<const StageError*>(&e)) return s->exit_code();
  if (dynamic_cast<const CertificateViolationError*>(&e)) return kExitCertificate;
  if (dynamic_cast<const SolverError*>(&e)) return kExitSolver;
  if (dynamic_cast<const Error*>(&e) || dynamic_cast<const json::exception*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

Instance load_instance(const InstanceSpec& spec) {
  Instance instance;
  if (!spec.generator.empty() && !spec.input_path.empty()) {
    throw ConfigError("give either an input file or a generator, not both");
  }
  if (!spec.input_path.empty()) {
    instance.graph =
        std::make_shared<const DirectedGraph>(load_edge_list(spec.input_path, spec.edge_options));
    instance.manifest = {{"input", spec.input_path},
                         {"undirected", spec.edge_options.undirected},
                         {"zero_based", spec.edge_options.zero_based}};
  } else if (!spec.generator.empty()) {
    const auto colon = spec.generator.find(':');
    const std::string name = spec.generator.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.generator.substr(colon + 1);
    auto number = [&](const char* what) -> std::uint64_t {
      if (arg.empty()) throw ConfigError("generator '" + name + "' needs :" + what);
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(arg, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != arg.size()) throw ConfigError("bad " + std::string(what) + " '" + arg + "'");
      return v;
    };
    json params = json::object();
    if (name == "fig2a") {
      instance.graph = std::make_shared<const DirectedGraph>(make_fig2a());
      instance.default_preset = "triangles";
    } else if (name == "fig2b") {
      const auto n = static_cast<int>(number("n"));
      params["n"] = n;
      instance.graph = std::make_shared<const DirectedGraph>(make_fig2b(n));
      instance.default_preset = "triangles";
    } else if (name == "anomaly") {
      const std::uint64_t seed = number("seed");
      params["seed"] = seed;
      instance.graph = std::make_shared<const DirectedGraph>(make_anomaly(seed));
      instance.default_preset = "anomaly";
    } else if (name == "layered-flow") {
      instance.graph = std::make_shared<const DirectedGraph>(make_layered_flow());
      instance.default_preset = "flow";
    } else {
      throw ConfigError("unknown generator '" + name +
                        "' (expected fig2a, fig2b:<n>, anomaly:<seed>, layered-flow)");
    }
    instance.manifest = {{"generator", name}, {"params", params}};
  } else {
    throw ConfigError("no instance: give an input file or a generator");
  }
  instance.manifest["vertices"] = instance.graph->num_vertices();
  instance.manifest["arcs"] = instance.graph->num_arcs();
  return instance;
}

json to_json(const RunConfig& config) {
  json out;
  out["name"] = config.name;
  if (!config.instance.input_path.empty()) {
    out["input"] = config.instance.input_path;
    out["undirected"] = config.instance.edge_options.undirected;
    out["zero_based"] = config.instance.edge_options.zero_based;
  }
  if (!config.instance.generator.empty()) out["generator"] = config.instance.generator;
  if (!config.weights_path.empty()) out["weights"] = config.weights_path;
  if (!config.weights_json.is_null()) out["weights_inline"] = config.weights_json;
  if (config.method) out["method"] = std::string(to_string(*config.method));
  if (config.layer_k) out["layer_k"] = *config.layer_k;
  out["relaxation"] = std::string(to_string(config.relaxation));
  if (config.alpha) out["alpha"] = *config.alpha;
  if (config.beta) out["beta"] = *config.beta;
  out["auto_params"] = !config.alpha && !config.beta;
  out["pivot"] = std::string(to_string(config.rounding.pivot));
  out["seed"] = config.rounding.seed;
  out["leftover"] = std::string(to_string(config.rounding.leftover));
  out["solver"] = {{"feasibility_tolerance", config.solver.feasibility_tolerance},
                   {"optimality_tolerance", config.solver.optimality_tolerance},
                   {"max_iterations", config.solver.max_iterations},
                   {"pricing", config.solver.pricing == PricingRule::kBland ? "bland" : "dantzig"},
                   {"perturb", config.solver.perturb},
                   {"seed", config.solver.seed}};
  out["certificate_tolerance"] = config.certificate_tolerance;
  if (!config.reference_path.empty()) out["reference"] = config.reference_path;
  return out;
}

MixedWeights resolve_weights(const RunConfig& config, const Instance& instance) {
  MixedWeights mixed = [&] {
    if (!config.weights_path.empty()) return load_weight_config(config.weights_path, instance.graph);
    if (!config.weights_json.is_null()) return mixed_weights_from_json(config.weights_json, instance.graph);
    if (config.method) return build_table1_weights(*config.method, instance.graph);
    if (!instance.default_preset.empty()) {
      return mixed_weights_from_json(json{{"preset", instance.default_preset}}, instance.graph);
    }
    throw ConfigError("no weights: give --weights or --method");
  }();
  if (config.layer_k) {
    const MotifLayer* layer = mixed.layer_for(*config.layer_k);
    if (layer == nullptr) {
      throw ConfigError("weights have no layer of size " + std::to_string(*config.layer_k));
    }
    return MixedWeights::single(layer->weights, 1.0);
  }
  return mixed;
}

LpProblem build_relaxation(Relaxation relaxation, const MixedWeights& mixed,
                           const BuildLimits& limits) {
  if (relaxation != Relaxation::kLp3 && mixed.layers().size() != 1) {
    throw ConfigError(std::string(to_string(relaxation)) +
                      " takes a single motif layer; use LP3 for mixed weights");
  }
  const int n = mixed.num_vertices();
  switch (relaxation) {
    case Relaxation::kLp1: return build_lp1(mixed.layers()[0].weights, n, limits);
    case Relaxation::kLp2: return build_lp2(mixed.layers()[0].weights, n, limits);
    case Relaxation::kLp3: break;
  }
  return build_lp3(mixed, n, limits);
}

std::map<std::string, ClassBreakdown> class_breakdown(const Partition& partition,
                                                      const MixedWeights& mixed) {
  std::map<std::string, ClassBreakdown> out;
  for (const auto& layer : mixed.layers()) {
    const std::string prefix = "k" + std::to_string(layer.k()) + "/";
    for (const KTuple& t : enumerate_ktuples(partition.num_vertices(), layer.k())) {
      const WeightPair w = layer.weights.resolve(t);
      auto& entry = out[prefix + std::string(to_string(layer.weights.classify(t.vertices())))];
      ++entry.tuples;
      if (is_split(t, partition)) {
        entry.split_positive += layer.lambda * w.plus;
      } else {
        entry.contained_negative += layer.lambda * w.minus;
      }
    }
  }
  return out;
}

Recommendation auto_params(const MixedWeights& mixed, Relaxation relaxation, ParamMode* mode) {
  const auto& layers = mixed.layers();
  ParamMode chosen = ParamMode::kMixed;
  Recommendation rec;
  if (relaxation == Relaxation::kLp1) {
    chosen = ParamMode::kMccTupleLp;
    rec = recommended_params(mixed.max_k(), chosen);
  } else if (layers.size() == 1) {
    chosen = ParamMode::kMccPairLp;
    rec = recommended_params(mixed.max_k(), chosen);
  } else if (layers.size() == 2 && layers[0].k() == 2 && layers[0].lambda > 0.0) {
    chosen = ParamMode::kEdgePlusK;
    rec = recommended_params(layers[1].k(), chosen, layers[1].lambda / layers[0].lambda,
                             mixed.num_vertices());
  } else {
    rec = recommended_params(mixed.max_k(), chosen);
  }
  if (mode != nullptr) *mode = chosen;
  return rec;
}

Report run(const RunConfig& config) {
  Report report;
  report.config = to_json(config);

  auto t0 = Clock::now();
  const Instance instance = stage("load", [&] { return load_instance(config.instance); });
  report.instance = instance.manifest;
  report.seconds["load"] = seconds_since(t0);

  const MixedWeights mixed = stage("weights", [&] { return resolve_weights(config, instance); });
  const int n = instance.graph->num_vertices();

  t0 = Clock::now();
  const LpProblem lp =
      stage("build", [&] { return build_relaxation(config.relaxation, mixed, config.limits); });
  report.lp_variables = static_cast<std::size_t>(lp.num_variables());
  report.lp_rows = lp.num_constraints();
  report.seconds["build"] = seconds_since(t0);

  t0 = Clock::now();
  const SolverResult solved = stage("solve", [&] {
    SolverResult r = solve(lp, config.solver);
    if (r.status != SolveStatus::kOptimal) {
      throw StageError("solve", "LP ended " + std::string(to_string(r.status)) + " after " +
                                    std::to_string(r.iterations) + " iterations",
                       kExitSolver);
    }
    const ViolationReport check = verify_solution(lp, r.solution, 1e-6);
    if (!check.feasible()) {
      throw StageError("solve", "solution violates " + check.violations.front().description,
                       kExitSolver);
    }
    return r;
  });
  report.lp_value = solved.solution.objective_value;
  report.lp_status = solved.status;
  report.lp_iterations = solved.iterations;
  report.seconds["solve"] = seconds_since(t0);

  t0 = Clock::now();
  RoundingResult rounded = stage("round", [&] {
    ParamMode mode = ParamMode::kMixed;
    const Recommendation rec = auto_params(mixed, config.relaxation, &mode);
    report.param_mode = std::string(to_string(mode));
    report.r0 = rec.r0;
    if (config.alpha || config.beta) {
      if (config.relaxation != Relaxation::kLp1 && (!config.alpha || !config.beta)) {
        throw ConfigError("pair rounding needs both alpha and beta");
      }
      report.params.alpha = *config.alpha;
      report.params.beta = config.beta.value_or(0.0);
      report.params.beta_limit = rec.params.beta_limit;
      report.param_mode = "explicit";
      report.ratio = config.relaxation == Relaxation::kLp1
                         ? 2.0 / report.params.alpha
                         : 1.0 / (report.params.alpha * report.params.beta);
    } else {
      report.params = rec.params;
      report.ratio = rec.ratio;
    }
    if (config.relaxation == Relaxation::kLp1) {
      return round_alg1(TupleValues::from_solution(lp, solved.solution.values, mixed.max_k()),
                        report.params, config.rounding);
    }
    return round_alg2(PairValues::from_solution(lp, solved.solution.values), mixed.max_k(),
                      report.params, config.rounding);
  });
  report.partition = rounded.partition;
  report.trace = std::move(rounded.trace);
  report.seconds["round"] = seconds_since(t0);

  const Certificate cert = stage("certify", [&] {
    return certify(report.partition, report.lp_value, mixed, report.ratio,
                   config.certificate_tolerance);
  });
  report.cost = cert.rounded_cost;
  report.empirical_ratio = cert.empirical_ratio;
  report.breakdown = class_breakdown(report.partition, mixed);

  if (!config.reference_path.empty()) {
    report.reference = stage("score", [&] {
      return score_against(report.partition, read_labels(config.reference_path, n));
    });
  }
  return report;
}

json to_json(const Report& report, bool include_timing) {
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["config"] = report.config;
  out["instance"] = report.instance;
  out["clusters"] = partition_json(report.partition);
  out["cost"] = report.cost;
  out["lp"] = {{"value", report.lp_value},
               {"status", std::string(to_string(report.lp_status))},
               {"iterations", report.lp_iterations},
               {"variables", report.lp_variables},
               {"rows", report.lp_rows}};
  json rounding = {{"mode", report.param_mode},
                   {"alpha", report.params.alpha},
                   {"beta", report.params.beta},
                   {"ratio", report.ratio},
                   {"empirical_ratio", report.empirical_ratio}};
  if (report.params.beta_limit) rounding["beta_limit"] = *report.params.beta_limit;
  if (report.r0 != 0.0) rounding["r0"] = report.r0;
  out["rounding"] = rounding;
  json breakdown = json::object();
  for (const auto& [key, b] : report.breakdown) {
    breakdown[key] = {{"tuples", b.tuples},
                      {"split_positive", b.split_positive},
                      {"contained_negative", b.contained_negative}};
  }
  out["breakdown"] = breakdown;
  if (report.reference) {
    out["reference"] = {{"misassigned", report.reference->misassigned},
                        {"rand_index", report.reference->rand_index}};
  }
  if (include_timing) out["seconds"] = report.seconds;
  return out;
}

std::vector<int> read_labels(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open labels file '" + path + "'");
  std::vector<int> labels(static_cast<std::size_t>(n), std::numeric_limits<int>::min());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long vertex = 0;
    long long label = 0;
    if (!(fields >> vertex)) continue;
    if (!(fields >> label)) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'vertex label'");
    }
    if (vertex < 1 || vertex > n) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": vertex " +
                        std::to_string(vertex) + " out of range");
    }
    auto& slot = labels[static_cast<std::size_t>(vertex - 1)];
    if (slot != std::numeric_limits<int>::min()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": vertex " +
                        std::to_string(vertex) + " labeled twice");
    }
    slot = static_cast<int>(label);
  }
  for (int v = 1; v <= n; ++v) {
    if (labels[static_cast<std::size_t>(v - 1)] == std::numeric_limits<int>::min()) {
      throw ConfigError(path + ": vertex " + std::to_string(v) + " has no label");
    }
  }
  return labels;
}

ReferenceScore score_against(const Partition& partition, std::span<const int> reference) {
  const int n = partition.num_vertices();
  if (static_cast<int>(reference.size()) != n) {
    throw InvalidParameterError("reference labeling has the wrong length");
  }
  std::vector<int> classes(reference.begin(), reference.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  auto class_index = [&](int label) {
    return static_cast<int>(std::lower_bound(classes.begin(), classes.end(), label) -
                            classes.begin());
  };
  const int size = std::max(partition.num_clusters(), static_cast<int>(classes.size()));
  std::vector<std::vector<double>> overlap(static_cast<std::size_t>(size),
                                           std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (VertexId v = 1; v <= n; ++v) {
    overlap[static_cast<std::size_t>(partition.cluster_of(v))]
           [static_cast<std::size_t>(class_index(reference[static_cast<std::size_t>(v - 1)]))] += 1.0;
  }
  const std::vector<int> match = max_weight_assignment(overlap);
  ReferenceScore score;
  for (VertexId v = 1; v <= n; ++v) {
    const int matched = match[static_cast<std::size_t>(partition.cluster_of(v))];
    if (matched != class_index(reference[static_cast<std::size_t>(v - 1)])) {
      score.misassigned.push_back(v);
    }
  }
  std::uint64_t agree = 0;
  std::uint64_t pairs = 0;
  for (VertexId u = 1; u <= n; ++u) {
    for (VertexId v = u + 1; v <= n; ++v) {
      ++pairs;
      const bool same_ref =
          reference[static_cast<std::size_t>(u - 1)] == reference[static_cast<std::size_t>(v - 1)];
      if (same_ref == partition.same_cluster(u, v)) ++agree;
    }
  }
  score.rand_index = pairs == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(pairs);
  return score;
}

std::string ComparisonTable::to_csv() const {
  std::ostringstream out;
  auto write_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
        out << '"';
      } else {
        out << c;
      }
    }
    out << '\n';
  };
  write_row(columns);
  for (const auto& row : rows) write_row(row);
  return out.str();
}

ComparisonTable compare(const std::vector<RunConfig>& configs) {
  if (configs.empty()) throw ConfigError("nothing to compare");
  ComparisonTable table;
  table.columns = {"name",  "relaxation",      "lp_value", "cost",        "ratio",
                   "empirical_ratio", "clusters", "misassigned", "rand_index"};
  table.json = json::array();
  std::shared_ptr<const DirectedGraph> first_graph;
  for (const RunConfig& config : configs) {
    const Instance instance = stage("load", [&] { return load_instance(config.instance); });
    if (!first_graph) {
      first_graph = instance.graph;
    } else if (!same_graph(*first_graph, *instance.graph)) {
      throw StageError("compare", "run '" + config.name + "' uses a different instance",
                       kExitConfig);
    }
    const Report report = run(config);
    std::string misassigned;
    std::string rand_index;
    if (report.reference) {
      misassigned = std::to_string(report.reference->misassigned.size());
      rand_index = format_number(report.reference->rand_index);
    }
    table.rows.push_back({config.name, std::string(to_string(config.relaxation)),
                          format_number(report.lp_value), format_number(report.cost),
                          format_number(report.ratio), format_number(report.empirical_ratio),
                          std::to_string(report.partition.num_clusters()), misassigned,
                          rand_index});
    table.json.push_back(to_json(report, false));
  }
  return table;
}

}  // namespace motifcc
