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

#ifndef MOTIFCC_MOTIF_H_
#define MOTIFCC_MOTIF_H_

// Motif classes of small vertex tuples and the probability weights
// (w+, w-) with w+ + w- = 1 attached to every k-tuple.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifcc/graph.h"

namespace motifcc {

enum class MotifClass {
  // k = 2
  kEdge,
  kNonEdge,
  // k = 3, directed reading
  kDirectedThreeCycle,
  kDirectedThreeCycleWithBidirectional,
  kFeedForward,
  // k = 3, undirected reading
  kTriangleK3,
  kPathP3,
  // k = 3, anything not listed above
  kOtherTriple,
  // k >= 4 or tuples scored by a user classifier
  kOtherTuple,
};

std::string_view to_string(MotifClass c);
// Accepts the names produced by to_string; throws ConfigError otherwise.
MotifClass motif_class_from_string(std::string_view name);

enum class TripleReading {
  // Undirected when the graph is symmetric, directed otherwise.
  kAuto,
  kDirected,
  kUndirected,
};

MotifClass classify_pair(const DirectedGraph& graph, VertexId u, VertexId v);
// Throws UnsupportedSizeError when the tuple does not have three vertices.
MotifClass classify_triple(const DirectedGraph& graph, std::span<const VertexId> tuple,
                           TripleReading reading = TripleReading::kAuto);
inline MotifClass classify_triple(const DirectedGraph& graph, const KTuple& tuple,
                                  TripleReading reading = TripleReading::kAuto) {
  return classify_triple(graph, tuple.vertices(), reading);
}

struct WeightPair {
  double plus = 0.0;   // cost of splitting the tuple across clusters
  double minus = 0.0;  // cost of keeping the tuple inside one cluster
};

// w+ per motif class. Classes without an entry fall back to the OtherTriple
// entry (k = 3) or the OtherTuple entry (k >= 4) when present.
class WeightRule {
 public:
  WeightRule() = default;
  WeightRule(std::initializer_list<std::pair<const MotifClass, double>> entries);

  // Throws InvalidParameterError unless 0 <= w_plus <= 1.
  void set(MotifClass c, double w_plus);
  std::optional<double> lookup(MotifClass c) const;
  const std::map<MotifClass, double>& entries() const { return entries_; }

 private:
  std::map<MotifClass, double> entries_;
};

// Optional per-tuple random draw of w+ for tuples of one class, replacing the
// constant rule value. Draws are a pure function of (seed, tuple).
struct RandomDraw {
  MotifClass target = MotifClass::kOtherTriple;
  double low = 0.41;
  double high = 0.48;
  std::uint64_t seed = 0;
};

using TupleClassifier =
    std::function<MotifClass(const DirectedGraph&, std::span<const VertexId>)>;

class MotifWeights {
 public:
  MotifWeights(int k, std::shared_ptr<const DirectedGraph> graph, WeightRule rule,
               TripleReading reading = TripleReading::kAuto);

  int k() const { return k_; }
  int num_vertices() const { return graph_->num_vertices(); }
  const DirectedGraph& graph() const { return *graph_; }
  std::shared_ptr<const DirectedGraph> graph_ptr() const { return graph_; }
  const WeightRule& rule() const { return rule_; }
  TripleReading reading() const { return reading_; }

  // Overrides win over the rule. Throws on size mismatch or w+ outside [0,1].
  void set_override(const KTuple& tuple, double w_plus);
  const std::map<KTuple, double>& overrides() const { return overrides_; }
  void set_random_draw(RandomDraw draw);
  const std::optional<RandomDraw>& random_draw() const { return random_draw_; }
  // Replaces the built-in classification (the hook for k >= 4 motifs).
  void set_classifier(TupleClassifier classifier);

  MotifClass classify(std::span<const VertexId> tuple) const;
  // Returns (a, 1 - a) with a in [0,1]. Throws UnsupportedSizeError when the
  // tuple size differs from k, ConfigError when no rule covers its class.
  WeightPair resolve(std::span<const VertexId> tuple) const;
  WeightPair resolve(const KTuple& tuple) const { return resolve(tuple.vertices()); }

 private:
  int k_;
  std::shared_ptr<const DirectedGraph> graph_;
  WeightRule rule_;
  TripleReading reading_;
  std::map<KTuple, double> overrides_;
  std::optional<RandomDraw> random_draw_;
  TupleClassifier classifier_;
};

inline WeightPair resolve_weight(const MotifWeights& weights, const KTuple& tuple) {
  return weights.resolve(tuple);
}

struct MotifLayer {
  MotifWeights weights;
  double lambda = 1.0;
  int k() const { return weights.k(); }
};

// Layers with strictly increasing motif sizes and non-negative relevance
// factors, all over the same vertex set.
class MixedWeights {
 public:
  explicit MixedWeights(std::vector<MotifLayer> layers);
  static MixedWeights single(MotifWeights weights, double lambda = 1.0);

  const std::vector<MotifLayer>& layers() const { return layers_; }
  int num_vertices() const;
  int max_k() const { return layers_.back().k(); }
  const MotifLayer* layer_for(int k) const;

 private:
  std::vector<MotifLayer> layers_;
};

enum class KarateMethod { kCC, kMCC, kMMCC };

std::string_view to_string(KarateMethod m);
KarateMethod karate_method_from_string(std::string_view name);

// Weight presets of the karate-club comparison: CC uses pairs only, MCC
// triples only, MMCC both with relevance 0.2 on the triples.
MixedWeights build_table1_weights(KarateMethod method,
                                  std::shared_ptr<const DirectedGraph> graph);

// Directed 3-cycles without bidirectional edges get w+ = 1; every other triple
// gets `other` (0.41 by default).
MotifWeights anomaly_weights(std::shared_ptr<const DirectedGraph> graph,
                             double other = 0.41);
// Directed 3-cycles (either kind) get w+ = 1, every other triple gets `other`.
MotifWeights flow_weights(std::shared_ptr<const DirectedGraph> graph,
                          double other = 0.45);
// 0/1 weights on triples of an undirected graph: a triangle is positive
// (1, 0), everything else negative (0, 1).
MotifWeights positive_triangle_weights(std::shared_ptr<const DirectedGraph> graph);

}  // namespace motifcc

#endif  // MOTIFCC_MOTIF_H_
