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

#ifndef MOTIFCC_ROUNDING_H_
#define MOTIFCC_ROUNDING_H_

// Pivot-based rounding of fractional LP solutions into partitions.
//
// Both procedures repeatedly pick a pivot v from the remaining set S, collect
// the vertices "close" to v, and emit either {v} or the pivot together with
// its close set. Closeness is y_vu (minimum tuple value over tuples holding
// v and u) for tuple solutions and z_vu for pair solutions.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motifcc/graph.h"
#include "motifcc/lp_model.h"
#include "motifcc/motif.h"

namespace motifcc {

// Threshold slack on the "<=" side of every comparison, absorbing solver
// noise.
inline constexpr double kRoundingSlack = 1e-9;

struct RoundingParams {
  double alpha = 0.0;
  // Ignored by tuple rounding.
  double beta = 0.0;
  // Upper bound enforced on beta; 1/k when unset.
  std::optional<double> beta_limit;
};

enum class PivotRule { kLowestLabel, kRandom };
enum class LeftoverPolicy { kOneCluster, kSingletons };

std::string_view to_string(PivotRule rule);
PivotRule pivot_rule_from_string(std::string_view name);
std::string_view to_string(LeftoverPolicy policy);
LeftoverPolicy leftover_policy_from_string(std::string_view name);

struct RoundingOptions {
  PivotRule pivot = PivotRule::kLowestLabel;
  std::uint64_t seed = 0;
  LeftoverPolicy leftover = LeftoverPolicy::kOneCluster;
};

struct RoundingStep {
  VertexId pivot = 0;
  // S at the start of the step.
  std::vector<VertexId> remaining;
  // Close set, without the pivot.
  std::vector<VertexId> neighborhood;
  double score_sum = 0.0;
  double threshold = 0.0;
  bool singleton = false;
  std::vector<VertexId> emitted;
};

struct RoundingTrace {
  std::vector<RoundingStep> steps;
  // Vertices left once |S| dropped below the motif size.
  std::vector<VertexId> leftover;

  // One JSON object per step, then one {"leftover": [...]} line.
  void write_json_lines(std::ostream& out) const;
};

struct RoundingResult {
  Partition partition;
  RoundingTrace trace;
};

// Dense view of x_K for one motif size, indexed by lexicographic rank.
class TupleValues {
 public:
  TupleValues(int n, int k);
  // Reads every k-tuple variable of `problem`; a size-2 tuple reads z.
  static TupleValues from_solution(const LpProblem& problem, std::span<const double> values,
                                   int k);

  int num_vertices() const { return n_; }
  int k() const { return k_; }
  double at(std::span<const VertexId> tuple) const;
  double at(const KTuple& tuple) const { return at(tuple.vertices()); }
  void set(const KTuple& tuple, double value);

 private:
  int n_;
  int k_;
  std::vector<double> values_;
};

// Symmetric z_uv with z_vv = 0.
class PairValues {
 public:
  explicit PairValues(int n);
  static PairValues from_solution(const LpProblem& problem, std::span<const double> values);

  int num_vertices() const { return n_; }
  double at(VertexId u, VertexId v) const;
  void set(VertexId u, VertexId v, double value);

 private:
  int n_;
  std::vector<double> values_;
};

// y_vu for every u in S other than v, in the order of `s`. Throws
// InvalidParameterError when |S| < k or v is not in S.
std::vector<std::pair<VertexId, double>> edge_scores_alg1(const TupleValues& x,
                                                         std::span<const VertexId> s,
                                                         VertexId v);

// Tuple rounding. Requires 0 < alpha <= 1/k.
RoundingResult round_alg1(const TupleValues& x, const RoundingParams& params,
                          const RoundingOptions& options = {});

// Pair rounding with motif size k_star. Requires 0 < alpha <= 1/k_star and
// 0 < beta <= beta_limit.
RoundingResult round_alg2(const PairValues& z, int k_star, const RoundingParams& params,
                          const RoundingOptions& options = {});

enum class ParamMode { kMccTupleLp, kMccPairLp, kMixed, kEdgePlusK };

std::string_view to_string(ParamMode mode);
ParamMode param_mode_from_string(std::string_view name);

struct Recommendation {
  RoundingParams params;
  // Proven bound on rounded cost / LP value.
  double ratio = 0.0;
  // Only set in edge-plus-k mode.
  double r0 = 0.0;
};

// lambda and n only matter for kEdgePlusK, where the k-layer carries weight
// lambda next to an edge layer of weight 1.
Recommendation recommended_params(int k, ParamMode mode, double lambda = 0.0, int n = 0);

struct Certificate {
  double rounded_cost = 0.0;
  double lp_value = 0.0;
  double ratio = 0.0;
  // rounded_cost / lp_value, or 1 when both vanish and +inf when only the LP does.
  double empirical_ratio = 0.0;
};

// Throws CertificateViolationError when rounded cost > ratio * lp_value + tolerance.
Certificate certify(const Partition& partition, double lp_value, const MixedWeights& mixed,
                    double ratio, double tolerance = 1e-6);
Certificate certify_cost(double rounded_cost, double lp_value, double ratio,
                         double tolerance = 1e-6);

}  // namespace motifcc

#endif  // MOTIFCC_ROUNDING_H_
