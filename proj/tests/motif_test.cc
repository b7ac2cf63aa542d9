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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "motifcc/errors.h"
#include "motifcc/weight_config.h"
#include "test_util.h"

namespace motifcc {
namespace {

std::shared_ptr<const DirectedGraph> shared(DirectedGraph g) {
  return std::make_shared<const DirectedGraph>(std::move(g));
}

TEST(ClassifyTriple, DirectedCycle) {
  const DirectedGraph g(3, {{1, 2}, {2, 3}, {3, 1}});
  EXPECT_EQ(classify_triple(g, KTuple{1, 2, 3}), MotifClass::kDirectedThreeCycle);
}

TEST(ClassifyTriple, UndirectedPathAndTriangle) {
  const DirectedGraph path = DirectedGraph::undirected(3, {{1, 2}, {2, 3}});
  EXPECT_EQ(classify_triple(path, KTuple{1, 2, 3}), MotifClass::kPathP3);
  const DirectedGraph tri = DirectedGraph::undirected(3, {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(classify_triple(tri, KTuple{1, 2, 3}), MotifClass::kTriangleK3);
}

TEST(ClassifyTriple, DirectedVariants) {
  const DirectedGraph ff(3, {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(classify_triple(ff, KTuple{1, 2, 3}), MotifClass::kFeedForward);
  const DirectedGraph bi(3, {{1, 2}, {2, 1}, {2, 3}, {3, 1}});
  EXPECT_EQ(classify_triple(bi, KTuple{1, 2, 3}), MotifClass::kDirectedThreeCycleWithBidirectional);
  const DirectedGraph sparse(3, {{1, 2}});
  EXPECT_EQ(classify_triple(sparse, KTuple{1, 2, 3}), MotifClass::kOtherTriple);
}

TEST(ClassifyTriple, WrongSizeThrows) {
  const DirectedGraph g(4, {{1, 2}});
  EXPECT_THROW(classify_triple(g, KTuple{1, 2}), UnsupportedSizeError);
  EXPECT_THROW(classify_triple(g, KTuple{1, 2, 3, 4}), UnsupportedSizeError);
}

DirectedGraph random_digraph(int n, double p, std::mt19937_64& rng) {
  std::vector<Arc> arcs;
  for (VertexId u = 1; u <= n; ++u) {
    for (VertexId v = 1; v <= n; ++v) {
      if (u != v && testing::uniform01(rng) < p) arcs.emplace_back(u, v);
    }
  }
  return DirectedGraph(n, arcs);
}

TEST(ClassifyTriple, InvariantUnderRelabeling) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const DirectedGraph g = random_digraph(n, 0.4, rng);
    std::vector<VertexId> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Arc> moved;
    for (const auto& [u, v] : g.arcs()) {
      moved.emplace_back(perm[static_cast<std::size_t>(u - 1)], perm[static_cast<std::size_t>(v - 1)]);
    }
    const DirectedGraph h(n, moved);
    for (const KTuple& t : enumerate_ktuples(n, 3)) {
      const KTuple image{perm[static_cast<std::size_t>(t[0] - 1)],
                         perm[static_cast<std::size_t>(t[1] - 1)],
                         perm[static_cast<std::size_t>(t[2] - 1)]};
      for (auto reading : {TripleReading::kDirected, TripleReading::kUndirected}) {
        ASSERT_EQ(classify_triple(g, t, reading), classify_triple(h, image, reading));
      }
    }
  }
}

TEST(ClassifyTriple, CleanCycleHasNoBidirectionalPair) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const DirectedGraph g = random_digraph(7, 0.5, rng);
    for (const KTuple& t : enumerate_ktuples(7, 3)) {
      if (classify_triple(g, t, TripleReading::kDirected) != MotifClass::kDirectedThreeCycle) {
        continue;
      }
      EXPECT_FALSE(g.bidirectional(t[0], t[1]) || g.bidirectional(t[0], t[2]) ||
                   g.bidirectional(t[1], t[2]));
    }
  }
  // A symmetric graph has no clean 3-cycles.
  const DirectedGraph sym = DirectedGraph::undirected(3, {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(classify_triple(sym, KTuple{1, 2, 3}, TripleReading::kDirected),
            MotifClass::kDirectedThreeCycleWithBidirectional);
}

TEST(ResolveWeight, AnomalyRules) {
  const auto g = shared(DirectedGraph(4, {{1, 2}, {2, 3}, {3, 1}}));
  const MotifWeights w = anomaly_weights(g);
  const WeightPair cycle = resolve_weight(w, KTuple{1, 2, 3});
  EXPECT_EQ(cycle.plus, 1.0);
  EXPECT_EQ(cycle.minus, 0.0);
  const WeightPair other = resolve_weight(w, KTuple{1, 2, 4});
  EXPECT_DOUBLE_EQ(other.plus, 0.41);
  EXPECT_DOUBLE_EQ(other.minus, 0.59);
}

TEST(ResolveWeight, KaratePathWeight) {
  const auto g = shared(DirectedGraph::undirected(3, {{1, 2}, {2, 3}}));
  const MixedWeights mcc = build_table1_weights(KarateMethod::kMCC, g);
  const WeightPair w = mcc.layers()[0].weights.resolve(KTuple{1, 2, 3});
  EXPECT_DOUBLE_EQ(w.plus, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.minus, 1.0 / 3.0);
}

TEST(ResolveWeight, SizeMismatchThrows) {
  const auto g = shared(DirectedGraph(4, {{1, 2}}));
  EXPECT_THROW(anomaly_weights(g).resolve(KTuple{1, 2}), UnsupportedSizeError);
}

TEST(ResolveWeight, AlwaysComplementaryPair) {
  std::mt19937_64 rng(3);
  const auto g = shared(random_digraph(8, 0.3, rng));
  MotifWeights w(3, g, {{MotifClass::kDirectedThreeCycle, 0.9}, {MotifClass::kOtherTriple, 0.2}});
  w.set_random_draw({MotifClass::kOtherTriple, 0.41, 0.48, 5});
  for (const KTuple& t : enumerate_ktuples(8, 3)) {
    const WeightPair p = w.resolve(t);
    EXPECT_GE(p.plus, 0.0);
    EXPECT_LE(p.plus, 1.0);
    EXPECT_DOUBLE_EQ(p.plus + p.minus, 1.0);
  }
}

TEST(ResolveWeight, OverrideWinsOverRuleAndDraw) {
  const auto g = shared(DirectedGraph(4, {{1, 2}, {2, 3}, {3, 1}}));
  MotifWeights w = anomaly_weights(g);
  w.set_random_draw({MotifClass::kOtherTriple, 0.41, 0.48, 1});
  w.set_override(KTuple{1, 2, 3}, 0.25);
  w.set_override(KTuple{1, 2, 4}, 0.75);
  EXPECT_DOUBLE_EQ(w.resolve(KTuple{1, 2, 3}).plus, 0.25);
  EXPECT_DOUBLE_EQ(w.resolve(KTuple{1, 2, 4}).plus, 0.75);
  EXPECT_THROW(w.set_override(KTuple{1, 3, 4}, 1.5), InvalidParameterError);
  EXPECT_THROW(w.set_override(KTuple{1, 3}, 0.5), UnsupportedSizeError);
}

TEST(ResolveWeight, RandomDrawIsSeededAndInRange) {
  const auto g = shared(DirectedGraph(6, {{1, 2}}));
  MotifWeights a(3, g, {{MotifClass::kOtherTriple, 0.41}});
  MotifWeights b(3, g, {{MotifClass::kOtherTriple, 0.41}});
  a.set_random_draw({MotifClass::kOtherTriple, 0.41, 0.48, 9});
  b.set_random_draw({MotifClass::kOtherTriple, 0.41, 0.48, 9});
  bool varied = false;
  for (const KTuple& t : enumerate_ktuples(6, 3)) {
    const double w = a.resolve(t).plus;
    EXPECT_GE(w, 0.41);
    EXPECT_LE(w, 0.48);
    EXPECT_EQ(w, b.resolve(t).plus);
    varied = varied || w != a.resolve(KTuple{1, 2, 3}).plus;
  }
  EXPECT_TRUE(varied);
}

TEST(ResolveWeight, UncoveredClassThrows) {
  const auto g = shared(DirectedGraph(3, {{1, 2}}));
  MotifWeights w(2, g, {{MotifClass::kEdge, 1.0}});
  EXPECT_THROW(w.resolve(KTuple{1, 3}), ConfigError);
}

TEST(KaratePresets, CCPairs) {
  const auto g = shared(DirectedGraph::undirected(3, {{1, 2}}));
  const MixedWeights cc = build_table1_weights(KarateMethod::kCC, g);
  ASSERT_EQ(cc.layers().size(), 1u);
  EXPECT_EQ(cc.layers()[0].k(), 2);
  const WeightPair edge = cc.layers()[0].weights.resolve(KTuple{1, 2});
  const WeightPair non_edge = cc.layers()[0].weights.resolve(KTuple{1, 3});
  EXPECT_DOUBLE_EQ(edge.plus, 1.0);
  EXPECT_DOUBLE_EQ(edge.minus, 0.0);
  EXPECT_DOUBLE_EQ(non_edge.plus, 0.47);
  EXPECT_DOUBLE_EQ(non_edge.minus, 0.53);
}

TEST(KaratePresets, MMCCRelevanceAndMCCLayers) {
  const auto g = shared(DirectedGraph::undirected(4, {{1, 2}, {2, 3}, {1, 3}}));
  const MixedWeights mmcc = build_table1_weights(KarateMethod::kMMCC, g);
  ASSERT_EQ(mmcc.layers().size(), 2u);
  EXPECT_DOUBLE_EQ(mmcc.layer_for(3)->lambda, 0.2);
  EXPECT_DOUBLE_EQ(mmcc.layer_for(2)->weights.resolve(KTuple{1, 4}).plus, 0.45);
  EXPECT_DOUBLE_EQ(mmcc.layer_for(3)->weights.resolve(KTuple{1, 2, 3}).plus, 1.0);
  EXPECT_DOUBLE_EQ(mmcc.layer_for(3)->weights.resolve(KTuple{2, 3, 4}).plus, 0.5);
  const MixedWeights mcc = build_table1_weights(KarateMethod::kMCC, g);
  EXPECT_EQ(mcc.layer_for(2), nullptr);
  EXPECT_DOUBLE_EQ(mcc.layer_for(3)->weights.resolve(KTuple{2, 3, 4}).plus, 0.49);
}

TEST(KaratePresets, MethodNames) {
  EXPECT_EQ(karate_method_from_string("MMCC"), KarateMethod::kMMCC);
  EXPECT_EQ(to_string(KarateMethod::kCC), "CC");
  EXPECT_THROW(karate_method_from_string("cc2"), ConfigError);
}

TEST(MixedWeights, RejectsBadLayerSets) {
  const auto g = shared(DirectedGraph(4, {{1, 2}}));
  const MotifWeights three(3, g, {{MotifClass::kOtherTriple, 0.5}});
  EXPECT_THROW(MixedWeights({{three, 1.0}, {three, 1.0}}), InvalidParameterError);
  EXPECT_THROW(MixedWeights({{three, -1.0}}), InvalidParameterError);
  EXPECT_THROW(MixedWeights(std::vector<MotifLayer>{}), InvalidParameterError);
}

TEST(MotifWeights, CustomClassifierForLargerTuples) {
  const auto g = shared(DirectedGraph(5, {{1, 2}}));
  MotifWeights w(4, g, {{MotifClass::kOtherTuple, 0.1}, {MotifClass::kTriangleK3, 0.9}});
  EXPECT_DOUBLE_EQ(w.resolve(KTuple{1, 2, 3, 4}).plus, 0.1);
  w.set_classifier([](const DirectedGraph&, std::span<const VertexId> t) {
    return t[0] == 1 ? MotifClass::kTriangleK3 : MotifClass::kOtherTuple;
  });
  EXPECT_DOUBLE_EQ(w.resolve(KTuple{1, 2, 3, 4}).plus, 0.9);
  EXPECT_DOUBLE_EQ(w.resolve(KTuple{2, 3, 4, 5}).plus, 0.1);
}

TEST(WeightConfig, ParsesRulesOverridesAndLambda) {
  const auto g = shared(DirectedGraph(4, {{1, 2}, {2, 3}, {3, 1}}));
  const auto cfg = nlohmann::json::parse(R"([
    {"k": 2, "rules": {"Edge": 1.0, "NonEdge": 0.3}},
    {"k": 3, "lambda": 0.5, "reading": "directed",
     "rules": {"DirectedThreeCycle": 1.0, "OtherTriple": 0.41},
     "overrides": [[1, 2, 4, 0.9]]}
  ])");
  const MixedWeights mixed = mixed_weights_from_json(cfg, g);
  ASSERT_EQ(mixed.layers().size(), 2u);
  EXPECT_DOUBLE_EQ(mixed.layer_for(3)->lambda, 0.5);
  EXPECT_DOUBLE_EQ(mixed.layer_for(3)->weights.resolve(KTuple{1, 2, 4}).plus, 0.9);
  EXPECT_DOUBLE_EQ(mixed.layer_for(3)->weights.resolve(KTuple{1, 2, 3}).plus, 1.0);
  EXPECT_DOUBLE_EQ(mixed.layer_for(2)->weights.resolve(KTuple{1, 4}).plus, 0.3);
  // Serializing and reading back gives the same weights.
  const MixedWeights back = mixed_weights_from_json(to_json(mixed), g);
  for (const auto& layer : mixed.layers()) {
    for (const KTuple& t : enumerate_ktuples(4, layer.k())) {
      EXPECT_EQ(layer.weights.resolve(t).plus, back.layer_for(layer.k())->weights.resolve(t).plus);
    }
  }
}

TEST(WeightConfig, PresetsAndErrors) {
  const auto g = shared(DirectedGraph::undirected(4, {{1, 2}, {2, 3}}));
  EXPECT_EQ(mixed_weights_from_json(nlohmann::json{{"preset", "MMCC"}}, g).layers().size(), 2u);
  EXPECT_THROW(mixed_weights_from_json(nlohmann::json{{"preset", "nope"}}, g), ConfigError);
  EXPECT_THROW(mixed_weights_from_json(nlohmann::json::parse(R"({"k": 3})"), g), ConfigError);
  EXPECT_THROW(
      mixed_weights_from_json(nlohmann::json::parse(R"({"k": 3, "rules": {"Bogus": 1}})"), g),
      ConfigError);
  EXPECT_THROW(mixed_weights_from_json(
                   nlohmann::json::parse(R"({"k": 3, "rules": {"OtherTriple": 1.5}})"), g),
               Error);
  EXPECT_THROW(load_weight_config("/nonexistent/weights.json", g), ConfigError);
}

}  // namespace
}  // namespace motifcc
