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

#include "motifcc/rounding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "motifcc/errors.h"

namespace motifcc {
namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
// Slack when checking that solver output lies in [0,1] and that parameters
// respect their bounds.
constexpr double kInputTolerance = 1e-6;
constexpr double kParamTolerance = 1e-12;

std::string format(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

class PivotPicker {
 public:
  explicit PivotPicker(const RoundingOptions& options)
      : rule_(options.pivot), rng_(options.seed) {}

  VertexId pick(const std::vector<VertexId>& s) {
    if (rule_ == PivotRule::kLowestLabel) return s.front();
    return s[static_cast<std::size_t>(rng_() % s.size())];
  }

 private:
  PivotRule rule_;
  std::mt19937_64 rng_;
};

std::vector<VertexId> remove_all(const std::vector<VertexId>& s,
                                 const std::vector<VertexId>& gone) {
  std::vector<VertexId> out;
  out.reserve(s.size());
  std::set_difference(s.begin(), s.end(), gone.begin(), gone.end(), std::back_inserter(out));
  return out;
}

// Shared pivot loop; `scores` returns (u, closeness) for every u in S - {v},
// `threshold` maps |N| to the singleton cut-off.
template <typename Scores, typename Threshold>
RoundingResult pivot_loop(int n, int min_size, const RoundingOptions& options, double alpha,
                          Scores scores, Threshold threshold) {
  RoundingResult result;
  std::vector<VertexId> s(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) s[static_cast<std::size_t>(v - 1)] = v;
  std::vector<std::vector<VertexId>> clusters;
  PivotPicker picker(options);

  while (static_cast<int>(s.size()) >= min_size) {
    RoundingStep step;
    step.pivot = picker.pick(s);
    step.remaining = s;
    for (const auto& [u, y] : scores(s, step.pivot)) {
      if (y <= alpha + kRoundingSlack) {
        step.neighborhood.push_back(u);
        step.score_sum += y;
      }
    }
    std::sort(step.neighborhood.begin(), step.neighborhood.end());
    step.threshold = threshold(step.neighborhood.size());
    step.singleton = step.score_sum > step.threshold + kRoundingSlack;
    if (step.singleton) {
      step.emitted = {step.pivot};
    } else {
      step.emitted = step.neighborhood;
      step.emitted.insert(
          std::lower_bound(step.emitted.begin(), step.emitted.end(), step.pivot), step.pivot);
    }
    s = remove_all(s, step.emitted);
    clusters.push_back(step.emitted);
    result.trace.steps.push_back(std::move(step));
  }

  result.trace.leftover = s;
  if (!s.empty()) {
    if (options.leftover == LeftoverPolicy::kOneCluster) {
      clusters.push_back(s);
    } else {
      for (VertexId v : s) clusters.push_back({v});
    }
  }
  result.partition = Partition::from_clusters(n, clusters);
  return result;
}

void check_unit_value(double v, const std::string& what) {
  if (std::isnan(v)) throw InvalidParameterError("no value for " + what);
  if (v < -kInputTolerance || v > 1.0 + kInputTolerance) {
    throw InvalidParameterError(what + " = " + format(v) + " lies outside [0,1]");
  }
}

}  // namespace

std::string_view to_string(PivotRule rule) {
  return rule == PivotRule::kLowestLabel ? "lowest" : "random";
}

PivotRule pivot_rule_from_string(std::string_view name) {
  if (name == "lowest") return PivotRule::kLowestLabel;
  if (name == "random") return PivotRule::kRandom;
  throw ConfigError("unknown pivot rule '" + std::string(name) + "'");
}

std::string_view to_string(LeftoverPolicy policy) {
  return policy == LeftoverPolicy::kOneCluster ? "cluster" : "singletons";
}

LeftoverPolicy leftover_policy_from_string(std::string_view name) {
  if (name == "cluster") return LeftoverPolicy::kOneCluster;
  if (name == "singletons") return LeftoverPolicy::kSingletons;
  throw ConfigError("unknown leftover policy '" + std::string(name) + "'");
}

void RoundingTrace::write_json_lines(std::ostream& out) const {
  for (const auto& step : steps) {
    nlohmann::json line = {{"pivot", step.pivot},
                           {"remaining", step.remaining},
                           {"neighborhood", step.neighborhood},
                           {"score_sum", step.score_sum},
                           {"threshold", step.threshold},
                           {"branch", step.singleton ? "singleton" : "cluster"},
                           {"emitted", step.emitted}};
    out << line.dump() << "\n";
  }
  out << nlohmann::json{{"leftover", leftover}}.dump() << "\n";
}

TupleValues::TupleValues(int n, int k) : n_(n), k_(k) {
  if (k < 2 || n < 0) throw InvalidParameterError("tuple values need k >= 2");
  values_.assign(static_cast<std::size_t>(binomial(n, k)), kMissing);
}

TupleValues TupleValues::from_solution(const LpProblem& problem,
                                       std::span<const double> values, int k) {
  if (values.size() != static_cast<std::size_t>(problem.num_variables())) {
    throw InvalidParameterError("solution length does not match the LP");
  }
  TupleValues out(problem.num_vertices(), k);
  for (int j = 0; j < problem.num_variables(); ++j) {
    const KTuple& t = problem.variable(j).key.vertices;
    if (static_cast<int>(t.size()) == k) out.set(t, values[static_cast<std::size_t>(j)]);
  }
  return out;
}

double TupleValues::at(std::span<const VertexId> tuple) const {
  return values_[lex_rank(tuple, n_)];
}

void TupleValues::set(const KTuple& tuple, double value) {
  if (static_cast<int>(tuple.size()) != k_) {
    throw InvalidParameterError("tuple " + tuple.to_string() + " has the wrong size");
  }
  for (VertexId v : tuple) {
    if (v < 1 || v > n_) throw InvalidVertexError("vertex " + std::to_string(v) + " out of range");
  }
  values_[lex_rank(tuple.vertices(), n_)] = value;
}

PairValues::PairValues(int n) : n_(n) {
  if (n < 0) throw InvalidParameterError("negative vertex count");
  values_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kMissing);
  for (int v = 0; v < n; ++v) values_[static_cast<std::size_t>(v) * static_cast<std::size_t>(n + 1)] = 0.0;
}

PairValues PairValues::from_solution(const LpProblem& problem, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(problem.num_variables())) {
    throw InvalidParameterError("solution length does not match the LP");
  }
  PairValues out(problem.num_vertices());
  for (int j = 0; j < problem.num_variables(); ++j) {
    const KTuple& t = problem.variable(j).key.vertices;
    if (t.size() == 2) out.set(t[0], t[1], values[static_cast<std::size_t>(j)]);
  }
  return out;
}

double PairValues::at(VertexId u, VertexId v) const {
  return values_[static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(v - 1)];
}

void PairValues::set(VertexId u, VertexId v, double value) {
  if (u < 1 || u > n_ || v < 1 || v > n_) {
    throw InvalidVertexError("pair (" + std::to_string(u) + "," + std::to_string(v) +
                             ") out of range");
  }
  if (u == v) throw InvalidParameterError("z is defined on distinct vertices only");
  const auto nn = static_cast<std::size_t>(n_);
  values_[static_cast<std::size_t>(u - 1) * nn + static_cast<std::size_t>(v - 1)] = value;
  values_[static_cast<std::size_t>(v - 1) * nn + static_cast<std::size_t>(u - 1)] = value;
}

std::vector<std::pair<VertexId, double>> edge_scores_alg1(const TupleValues& x,
                                                         std::span<const VertexId> s,
                                                         VertexId v) {
  const int k = x.k();
  if (static_cast<int>(s.size()) < k) {
    throw InvalidParameterError("edge scores need |S| >= k (|S| = " + std::to_string(s.size()) +
                                ", k = " + std::to_string(k) + ")");
  }
  if (std::find(s.begin(), s.end(), v) == s.end()) {
    throw InvalidParameterError("pivot " + std::to_string(v) + " is not in S");
  }
  std::vector<std::pair<VertexId, double>> scores;
  std::vector<VertexId> pool;
  std::vector<std::size_t> pick(static_cast<std::size_t>(k - 2));
  std::vector<VertexId> tuple(static_cast<std::size_t>(k));
  for (VertexId u : s) {
    if (u == v) continue;
    pool.clear();
    for (VertexId w : s) {
      if (w != u && w != v) pool.push_back(w);
    }
    std::sort(pool.begin(), pool.end());
    const std::size_t r = pick.size();
    for (std::size_t i = 0; i < r; ++i) pick[i] = i;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
      tuple[0] = u;
      tuple[1] = v;
      for (std::size_t i = 0; i < r; ++i) tuple[i + 2] = pool[pick[i]];
      std::vector<VertexId> sorted = tuple;
      std::sort(sorted.begin(), sorted.end());
      best = std::min(best, x.at(sorted));
      // Next r-combination of pool.
      std::size_t i = r;
      while (i > 0 && pick[i - 1] == pool.size() - r + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    scores.emplace_back(u, best);
  }
  return scores;
}

RoundingResult round_alg1(const TupleValues& x, const RoundingParams& params,
                          const RoundingOptions& options) {
  const int k = x.k();
  if (!(params.alpha > 0.0) || params.alpha > 1.0 / k + kParamTolerance) {
    throw InvalidParameterError("alpha = " + format(params.alpha) +
                                " violates 0 < alpha <= 1/k = " + format(1.0 / k));
  }
  for (const KTuple& t : enumerate_ktuples(x.num_vertices(), k)) {
    check_unit_value(x.at(t), "x_" + t.to_string());
  }
  const double alpha = params.alpha;
  return pivot_loop(
      x.num_vertices(), k, options, alpha,
      [&x](const std::vector<VertexId>& s, VertexId v) { return edge_scores_alg1(x, s, v); },
      [alpha](std::size_t size) { return alpha / 2.0 * static_cast<double>(size); });
}

RoundingResult round_alg2(const PairValues& z, int k_star, const RoundingParams& params,
                          const RoundingOptions& options) {
  if (k_star < 2) throw InvalidParameterError("motif size must be at least 2");
  const double limit = params.beta_limit.value_or(1.0 / k_star);
  if (!(params.alpha > 0.0) || params.alpha > 1.0 / k_star + kParamTolerance) {
    throw InvalidParameterError("alpha = " + format(params.alpha) +
                                " violates 0 < alpha <= 1/k = " + format(1.0 / k_star));
  }
  if (!(params.beta > 0.0) || params.beta > limit + kParamTolerance) {
    throw InvalidParameterError("beta = " + format(params.beta) +
                                " violates 0 < beta <= " + format(limit));
  }
  const int n = z.num_vertices();
  for (VertexId u = 1; u <= n; ++u) {
    for (VertexId v = u + 1; v <= n; ++v) {
      check_unit_value(z.at(u, v), "z_" + std::to_string(u) + "_" + std::to_string(v));
    }
  }
  for (VertexId u = 1; u <= n; ++u) {
    for (VertexId v = u + 1; v <= n; ++v) {
      for (VertexId w = v + 1; w <= n; ++w) {
        const double a = z.at(u, v), b = z.at(v, w), c = z.at(u, w);
        if (a > b + c + kInputTolerance || b > a + c + kInputTolerance ||
            c > a + b + kInputTolerance) {
          throw InvalidParameterError("z violates the triangle inequality on {" +
                                      std::to_string(u) + "," + std::to_string(v) + "," +
                                      std::to_string(w) + "}");
        }
      }
    }
  }
  const double alpha = params.alpha;
  const double beta = params.beta;
  return pivot_loop(
      n, k_star, options, alpha,
      [&z](const std::vector<VertexId>& s, VertexId v) {
        std::vector<std::pair<VertexId, double>> scores;
        for (VertexId u : s) {
          if (u != v) scores.emplace_back(u, z.at(v, u));
        }
        return scores;
      },
      [alpha, beta](std::size_t size) { return beta * alpha * static_cast<double>(size); });
}

std::string_view to_string(ParamMode mode) {
  switch (mode) {
    case ParamMode::kMccTupleLp: return "mcc-lp1";
    case ParamMode::kMccPairLp: return "mcc-lp2";
    case ParamMode::kMixed: return "mmcc";
    case ParamMode::kEdgePlusK: return "edge-plus-k";
  }
  return "mmcc";
}

ParamMode param_mode_from_string(std::string_view name) {
  for (ParamMode m : {ParamMode::kMccTupleLp, ParamMode::kMccPairLp, ParamMode::kMixed,
                      ParamMode::kEdgePlusK}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown parameter mode '" + std::string(name) + "'");
}

Recommendation recommended_params(int k, ParamMode mode, double lambda, int n) {
  if (k < 2) throw InvalidParameterError("motif size must be at least 2");
  const double kk = k;
  Recommendation rec;
  switch (mode) {
    case ParamMode::kMccTupleLp:
      rec.params.alpha = 1.0 / kk;
      rec.ratio = 2.0 * kk;
      break;
    case ParamMode::kMccPairLp:
    case ParamMode::kMixed:
      rec.params.alpha = rec.params.beta = 1.0 / kk;
      rec.ratio = kk * kk;
      break;
    case ParamMode::kEdgePlusK:
      if (!(lambda >= 0.0)) throw InvalidParameterError("lambda must be non-negative");
      if (n < k) throw InvalidParameterError("edge-plus-k mode needs n >= k");
      rec.r0 = (kk - 2.0) / (1.0 + lambda * std::pow(static_cast<double>(n), kk - 1.0));
      rec.params.alpha = 1.0 / kk;
      rec.params.beta = 1.0 / (kk - rec.r0);
      rec.params.beta_limit = rec.params.beta;
      rec.ratio = kk * (kk - rec.r0);
      break;
  }
  return rec;
}

Certificate certify_cost(double rounded_cost, double lp_value, double ratio, double tolerance) {
  Certificate c;
  c.rounded_cost = rounded_cost;
  c.lp_value = lp_value;
  c.ratio = ratio;
  if (std::abs(lp_value) <= tolerance) {
    c.empirical_ratio =
        std::abs(rounded_cost) <= tolerance ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    c.empirical_ratio = rounded_cost / lp_value;
  }
  if (rounded_cost > ratio * lp_value + tolerance) {
    throw CertificateViolationError("rounded cost " + format(rounded_cost) + " exceeds " +
                                    format(ratio) + " x LP value " + format(lp_value));
  }
  return c;
}

Certificate certify(const Partition& partition, double lp_value, const MixedWeights& mixed,
                    double ratio, double tolerance) {
  return certify_cost(evaluate_objective(partition, mixed), lp_value, ratio, tolerance);
}

}  // namespace motifcc
