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

#include "motifcc/motif.h"

#include <algorithm>
#include <array>
#include <utility>

#include "motifcc/errors.h"

namespace motifcc {
namespace {

constexpr std::array<std::pair<MotifClass, std::string_view>, 9> kClassNames{{
    {MotifClass::kEdge, "Edge"},
    {MotifClass::kNonEdge, "NonEdge"},
    {MotifClass::kDirectedThreeCycle, "DirectedThreeCycle"},
    {MotifClass::kDirectedThreeCycleWithBidirectional,
     "DirectedThreeCycleWithBidirectional"},
    {MotifClass::kFeedForward, "FeedForward"},
    {MotifClass::kTriangleK3, "TriangleK3"},
    {MotifClass::kPathP3, "PathP3"},
    {MotifClass::kOtherTriple, "OtherTriple"},
    {MotifClass::kOtherTuple, "OtherTuple"},
}};

void check_weight(double w_plus) {
  if (!(w_plus >= 0.0 && w_plus <= 1.0)) {
    throw InvalidParameterError("w+ must lie in [0,1], got " + std::to_string(w_plus));
  }
}

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double draw_unit(std::uint64_t seed, std::span<const VertexId> tuple) {
  std::uint64_t h = mix(seed);
  for (VertexId v : tuple) h = mix(h ^ static_cast<std::uint64_t>(v));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

std::string_view to_string(MotifClass c) {
  for (const auto& [cls, name] : kClassNames) {
    if (cls == c) return name;
  }
  return "Unknown";
}

MotifClass motif_class_from_string(std::string_view name) {
  for (const auto& [cls, label] : kClassNames) {
    if (label == name) return cls;
  }
  // Short aliases used in configs and tables.
  if (name == "K3") return MotifClass::kTriangleK3;
  if (name == "P3") return MotifClass::kPathP3;
  throw ConfigError("unknown motif class '" + std::string(name) + "'");
}

MotifClass classify_pair(const DirectedGraph& graph, VertexId u, VertexId v) {
  return graph.adjacent(u, v) ? MotifClass::kEdge : MotifClass::kNonEdge;
}

MotifClass classify_triple(const DirectedGraph& graph, std::span<const VertexId> tuple,
                           TripleReading reading) {
  if (tuple.size() != 3) {
    throw UnsupportedSizeError("triple classification needs k = 3, got k = " +
                               std::to_string(tuple.size()));
  }
  const VertexId a = tuple[0];
  const VertexId b = tuple[1];
  const VertexId c = tuple[2];
  if (reading == TripleReading::kAuto) {
    reading = graph.is_symmetric() ? TripleReading::kUndirected : TripleReading::kDirected;
  }

  if (reading == TripleReading::kUndirected) {
    const int edges = int{graph.adjacent(a, b)} + int{graph.adjacent(a, c)} +
                      int{graph.adjacent(b, c)};
    if (edges == 3) return MotifClass::kTriangleK3;
    if (edges == 2) return MotifClass::kPathP3;
    return MotifClass::kOtherTriple;
  }

  const int bidirectional = int{graph.bidirectional(a, b)} +
                            int{graph.bidirectional(a, c)} +
                            int{graph.bidirectional(b, c)};
  // A bidirectional pair counts as an arc in both directions.
  const bool forward_cycle =
      graph.has_arc(a, b) && graph.has_arc(b, c) && graph.has_arc(c, a);
  const bool backward_cycle =
      graph.has_arc(a, c) && graph.has_arc(c, b) && graph.has_arc(b, a);
  if (forward_cycle || backward_cycle) {
    return bidirectional == 0 ? MotifClass::kDirectedThreeCycle
                              : MotifClass::kDirectedThreeCycleWithBidirectional;
  }
  const int arcs = int{graph.has_arc(a, b)} + int{graph.has_arc(b, a)} +
                   int{graph.has_arc(a, c)} + int{graph.has_arc(c, a)} +
                   int{graph.has_arc(b, c)} + int{graph.has_arc(c, b)};
  // Three one-way arcs without a cycle form the transitive triangle.
  if (arcs == 3 && bidirectional == 0) return MotifClass::kFeedForward;
  return MotifClass::kOtherTriple;
}

// ---------------------------------------------------------------------------
// WeightRule

WeightRule::WeightRule(std::initializer_list<std::pair<const MotifClass, double>> entries) {
  for (const auto& [c, w] : entries) set(c, w);
}

void WeightRule::set(MotifClass c, double w_plus) {
  check_weight(w_plus);
  entries_[c] = w_plus;
}

std::optional<double> WeightRule::lookup(MotifClass c) const {
  if (auto it = entries_.find(c); it != entries_.end()) return it->second;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// MotifWeights

MotifWeights::MotifWeights(int k, std::shared_ptr<const DirectedGraph> graph,
                           WeightRule rule, TripleReading reading)
    : k_(k), graph_(std::move(graph)), rule_(std::move(rule)), reading_(reading) {
  if (k < 2) throw InvalidParameterError("motif size must be at least 2");
  if (!graph_) throw InvalidParameterError("motif weights need a graph");
}

void MotifWeights::set_override(const KTuple& tuple, double w_plus) {
  if (static_cast<int>(tuple.size()) != k_) {
    throw UnsupportedSizeError("override " + tuple.to_string() + " has size " +
                               std::to_string(tuple.size()) + ", layer has k = " +
                               std::to_string(k_));
  }
  for (VertexId v : tuple) graph_->check_vertex(v);
  check_weight(w_plus);
  overrides_[tuple] = w_plus;
}

void MotifWeights::set_random_draw(RandomDraw draw) {
  check_weight(draw.low);
  check_weight(draw.high);
  if (draw.low > draw.high) {
    throw InvalidParameterError("random draw interval is empty");
  }
  random_draw_ = draw;
}

void MotifWeights::set_classifier(TupleClassifier classifier) {
  classifier_ = std::move(classifier);
}

MotifClass MotifWeights::classify(std::span<const VertexId> tuple) const {
  if (classifier_) return classifier_(*graph_, tuple);
  if (k_ == 2) return classify_pair(*graph_, tuple[0], tuple[1]);
  if (k_ == 3) return classify_triple(*graph_, tuple, reading_);
  return MotifClass::kOtherTuple;
}

WeightPair MotifWeights::resolve(std::span<const VertexId> tuple) const {
  if (static_cast<int>(tuple.size()) != k_) {
    throw UnsupportedSizeError("tuple of size " + std::to_string(tuple.size()) +
                               " looked up in a k = " + std::to_string(k_) + " layer");
  }
  if (!overrides_.empty()) {
    if (auto it = overrides_.find(KTuple(std::vector<VertexId>(tuple.begin(), tuple.end())));
        it != overrides_.end()) {
      return {it->second, 1.0 - it->second};
    }
  }
  const MotifClass cls = classify(tuple);
  if (random_draw_ && random_draw_->target == cls) {
    const double u = draw_unit(random_draw_->seed, tuple);
    const double w = random_draw_->low + (random_draw_->high - random_draw_->low) * u;
    return {w, 1.0 - w};
  }
  std::optional<double> w = rule_.lookup(cls);
  if (!w && k_ == 3) w = rule_.lookup(MotifClass::kOtherTriple);
  if (!w && k_ >= 4) w = rule_.lookup(MotifClass::kOtherTuple);
  if (!w) {
    throw ConfigError("no weight rule covers motif class " + std::string(to_string(cls)) +
                      " (k = " + std::to_string(k_) + ")");
  }
  return {*w, 1.0 - *w};
}

// ---------------------------------------------------------------------------
// MixedWeights

MixedWeights::MixedWeights(std::vector<MotifLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw InvalidParameterError("mixed weights need a layer");
  for (std::size_t t = 0; t < layers_.size(); ++t) {
    if (!(layers_[t].lambda >= 0.0)) {
      throw InvalidParameterError("relevance factors must be non-negative");
    }
    if (t > 0 && layers_[t].k() <= layers_[t - 1].k()) {
      throw InvalidParameterError("motif sizes must be strictly increasing");
    }
    if (layers_[t].weights.num_vertices() != layers_.front().weights.num_vertices()) {
      throw InvalidParameterError("all layers must share one vertex set");
    }
  }
}

MixedWeights MixedWeights::single(MotifWeights weights, double lambda) {
  std::vector<MotifLayer> layers;
  layers.push_back(MotifLayer{std::move(weights), lambda});
  return MixedWeights(std::move(layers));
}

int MixedWeights::num_vertices() const { return layers_.front().weights.num_vertices(); }

const MotifLayer* MixedWeights::layer_for(int k) const {
  for (const auto& layer : layers_) {
    if (layer.k() == k) return &layer;
  }
  return nullptr;
}

std::string_view to_string(KarateMethod m) {
  switch (m) {
    case KarateMethod::kCC: return "CC";
    case KarateMethod::kMCC: return "MCC";
    case KarateMethod::kMMCC: return "MMCC";
  }
  return "?";
}

KarateMethod karate_method_from_string(std::string_view name) {
  if (name == "CC") return KarateMethod::kCC;
  if (name == "MCC") return KarateMethod::kMCC;
  if (name == "MMCC") return KarateMethod::kMMCC;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected CC, MCC, MMCC)");
}

MixedWeights build_table1_weights(KarateMethod method,
                                  std::shared_ptr<const DirectedGraph> graph) {
  constexpr double kPath = 2.0 / 3.0;
  std::vector<MotifLayer> layers;
  switch (method) {
    case KarateMethod::kCC:
      layers.push_back({MotifWeights(2, graph,
                                     {{MotifClass::kNonEdge, 0.47}, {MotifClass::kEdge, 1.0}}),
                        1.0});
      break;
    case KarateMethod::kMCC:
      layers.push_back({MotifWeights(3, graph,
                                     {{MotifClass::kOtherTriple, 0.49},
                                      {MotifClass::kTriangleK3, 1.0},
                                      {MotifClass::kPathP3, kPath}},
                                     TripleReading::kUndirected),
                        1.0});
      break;
    case KarateMethod::kMMCC:
      layers.push_back({MotifWeights(2, graph,
                                     {{MotifClass::kNonEdge, 0.45}, {MotifClass::kEdge, 1.0}}),
                        1.0});
      layers.push_back({MotifWeights(3, graph,
                                     {{MotifClass::kOtherTriple, 0.5},
                                      {MotifClass::kTriangleK3, 1.0},
                                      {MotifClass::kPathP3, kPath}},
                                     TripleReading::kUndirected),
                        0.2});
      break;
  }
  return MixedWeights(std::move(layers));
}

MotifWeights anomaly_weights(std::shared_ptr<const DirectedGraph> graph, double other) {
  return MotifWeights(3, std::move(graph),
                      {{MotifClass::kDirectedThreeCycle, 1.0},
                       {MotifClass::kOtherTriple, other}},
                      TripleReading::kDirected);
}

MotifWeights flow_weights(std::shared_ptr<const DirectedGraph> graph, double other) {
  return MotifWeights(3, std::move(graph),
                      {{MotifClass::kDirectedThreeCycle, 1.0},
                       {MotifClass::kDirectedThreeCycleWithBidirectional, 1.0},
                       {MotifClass::kOtherTriple, other}},
                      TripleReading::kDirected);
}

MotifWeights positive_triangle_weights(std::shared_ptr<const DirectedGraph> graph) {
  return MotifWeights(3, std::move(graph),
                      {{MotifClass::kTriangleK3, 1.0},
                       {MotifClass::kPathP3, 0.0},
                       {MotifClass::kOtherTriple, 0.0}},
                      TripleReading::kUndirected);
}

}  // namespace motifcc
