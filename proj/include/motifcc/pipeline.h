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

#ifndef MOTIFCC_PIPELINE_H_
#define MOTIFCC_PIPELINE_H_

// End-to-end runs: instance -> weights -> LP -> solve -> round -> certify.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "motifcc/graph.h"
#include "motifcc/lp_model.h"
#include "motifcc/motif.h"
#include "motifcc/rounding.h"
#include "motifcc/simplex.h"

namespace motifcc {

inline constexpr int kReportSchemaVersion = 1;

enum class Relaxation { kLp1, kLp2, kLp3 };

std::string_view to_string(Relaxation r);
Relaxation relaxation_from_string(std::string_view name);

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitCertificate = 4,
};

// Wraps an error raised inside one pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message, int exit_code)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)),
        exit_code_(exit_code) {}
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

// Exit code for an exception escaping a stage.
int exit_code_for(const std::exception& e);

struct InstanceSpec {
  // Edge-list file, or empty when a generator is used.
  std::string input_path;
  EdgeListOptions edge_options;
  // "fig2a", "fig2b:<n>", "anomaly:<seed>" or "layered-flow".
  std::string generator;
};

struct Instance {
  std::shared_ptr<const DirectedGraph> graph;
  // Weight preset matching the generator, empty for files.
  std::string default_preset;
  nlohmann::json manifest;
};

Instance load_instance(const InstanceSpec& spec);

struct RunConfig {
  InstanceSpec instance;
  // Weight source, in priority order: a JSON file, inline JSON, a method preset.
  std::string weights_path;
  nlohmann::json weights_json;
  std::optional<KarateMethod> method;
  // Use only the layer of this size from the resolved weights.
  std::optional<int> layer_k;
  Relaxation relaxation = Relaxation::kLp3;
  // Explicit parameters; both unset means automatic selection.
  std::optional<double> alpha;
  std::optional<double> beta;
  SolverConfig solver;
  RoundingOptions rounding;
  BuildLimits limits;
  double certificate_tolerance = 1e-6;
  // Labels file ("vertex label" per line) to score the result against.
  std::string reference_path;
  // Free-form name carried into reports and comparison tables.
  std::string name;
};

// Echo of a RunConfig, for reports.
nlohmann::json to_json(const RunConfig& config);

struct ClassBreakdown {
  double split_positive = 0.0;
  double contained_negative = 0.0;
  std::size_t tuples = 0;
};

struct ReferenceScore {
  std::vector<VertexId> misassigned;
  double rand_index = 0.0;
};

struct Report {
  nlohmann::json config;
  nlohmann::json instance;
  Partition partition;
  double cost = 0.0;
  double lp_value = 0.0;
  SolveStatus lp_status = SolveStatus::kOptimal;
  std::int64_t lp_iterations = 0;
  std::size_t lp_variables = 0;
  std::size_t lp_rows = 0;
  std::string param_mode;
  RoundingParams params;
  double ratio = 0.0;
  double empirical_ratio = 0.0;
  double r0 = 0.0;
  // Keyed "k<size>/<class>".
  std::map<std::string, ClassBreakdown> breakdown;
  std::optional<ReferenceScore> reference;
  RoundingTrace trace;
  std::map<std::string, double> seconds;
};

MixedWeights resolve_weights(const RunConfig& config, const Instance& instance);

// The LP for `relaxation`; LP1 and LP2 take a single layer.
LpProblem build_relaxation(Relaxation relaxation, const MixedWeights& mixed,
                           const BuildLimits& limits = {});

// Split positives and contained negatives per layer and motif class; the
// entries sum to evaluate_objective(partition, mixed).
std::map<std::string, ClassBreakdown> class_breakdown(const Partition& partition,
                                                      const MixedWeights& mixed);

// Parameters chosen by "auto": tuple LP -> 1/k; one layer -> alpha = beta =
// 1/k; layers {2,k} -> edge-plus-k with lambda_k / lambda_2; else 1/k*.
Recommendation auto_params(const MixedWeights& mixed, Relaxation relaxation,
                           ParamMode* mode = nullptr);

// Throws StageError tagged with the failing stage.
Report run(const RunConfig& config);

nlohmann::json to_json(const Report& report, bool include_timing = true);

// Reads "vertex label" lines; '#' starts a comment.
std::vector<int> read_labels(const std::string& path, int n);

// Vertices outside their matched reference class under the best one-to-one
// matching of clusters to classes, and the Rand index.
ReferenceScore score_against(const Partition& partition, std::span<const int> reference);

struct ComparisonTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json json;

  std::string to_csv() const;
};

// Runs each config; all must resolve to the same instance.
ComparisonTable compare(const std::vector<RunConfig>& configs);

}  // namespace motifcc

#endif  // MOTIFCC_PIPELINE_H_
