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

#include "motifcc/weight_config.h"

#include <fstream>

#include "motifcc/errors.h"

namespace motifcc {
namespace {

using nlohmann::json;

TripleReading reading_from_string(const std::string& s) {
  if (s == "auto") return TripleReading::kAuto;
  if (s == "directed") return TripleReading::kDirected;
  if (s == "undirected") return TripleReading::kUndirected;
  throw ConfigError("unknown triple reading '" + s + "'");
}

std::string_view reading_name(TripleReading r) {
  switch (r) {
    case TripleReading::kAuto: return "auto";
    case TripleReading::kDirected: return "directed";
    case TripleReading::kUndirected: return "undirected";
  }
  return "auto";
}

MixedWeights from_preset(const std::string& name,
                         std::shared_ptr<const DirectedGraph> graph) {
  if (name == "CC" || name == "MCC" || name == "MMCC") {
    return build_table1_weights(karate_method_from_string(name), std::move(graph));
  }
  if (name == "anomaly") return MixedWeights::single(anomaly_weights(std::move(graph)));
  if (name == "flow") return MixedWeights::single(flow_weights(std::move(graph)));
  if (name == "triangles") {
    return MixedWeights::single(positive_triangle_weights(std::move(graph)));
  }
  throw ConfigError("unknown weight preset '" + name + "'");
}

}  // namespace

MotifWeights motif_weights_from_json(const json& layer,
                                     std::shared_ptr<const DirectedGraph> graph) {
  try {
    if (!layer.is_object()) throw ConfigError("a weight layer must be a JSON object");
    const int k = layer.at("k").get<int>();
    WeightRule rule;
    for (const auto& [name, value] : layer.at("rules").items()) {
      rule.set(motif_class_from_string(name), value.get<double>());
    }
    const TripleReading reading =
        layer.contains("reading") ? reading_from_string(layer["reading"].get<std::string>())
                                  : TripleReading::kAuto;
    MotifWeights weights(k, std::move(graph), std::move(rule), reading);
    if (layer.contains("overrides")) {
      for (const auto& entry : layer["overrides"]) {
        if (!entry.is_array() || static_cast<int>(entry.size()) != k + 1) {
          throw ConfigError("override entries must list k vertices followed by w+");
        }
        std::vector<VertexId> vertices;
        for (int i = 0; i < k; ++i) vertices.push_back(entry[static_cast<std::size_t>(i)].get<VertexId>());
        weights.set_override(KTuple(std::move(vertices)),
                             entry[static_cast<std::size_t>(k)].get<double>());
      }
    }
    if (layer.contains("random_draw")) {
      const auto& d = layer["random_draw"];
      RandomDraw draw;
      draw.target = motif_class_from_string(d.value("class", std::string("OtherTriple")));
      draw.low = d.value("low", draw.low);
      draw.high = d.value("high", draw.high);
      draw.seed = d.value("seed", std::uint64_t{0});
      weights.set_random_draw(draw);
    }
    return weights;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed weight layer: ") + e.what());
  } catch (const InvalidParameterError& e) {
    throw ConfigError(std::string("invalid weight layer: ") + e.what());
  } catch (const UnsupportedSizeError& e) {
    throw ConfigError(std::string("invalid weight layer: ") + e.what());
  }
}

MixedWeights mixed_weights_from_json(const json& config,
                                     std::shared_ptr<const DirectedGraph> graph) {
  if (config.is_object() && config.contains("preset")) {
    return from_preset(config["preset"].get<std::string>(), std::move(graph));
  }
  const json* list = &config;
  if (config.is_object() && config.contains("layers")) list = &config["layers"];
  std::vector<MotifLayer> layers;
  if (list->is_array()) {
    for (const auto& layer : *list) {
      const double lambda = layer.value("lambda", 1.0);
      layers.push_back({motif_weights_from_json(layer, graph), lambda});
    }
  } else {
    const double lambda = list->value("lambda", 1.0);
    layers.push_back({motif_weights_from_json(*list, graph), lambda});
  }
  try {
    return MixedWeights(std::move(layers));
  } catch (const InvalidParameterError& e) {
    throw ConfigError(e.what());
  }
}

MixedWeights load_weight_config(const std::string& path,
                                std::shared_ptr<const DirectedGraph> graph) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weight config '" + path + "'");
  json config;
  try {
    in >> config;
  } catch (const json::exception& e) {
    throw ConfigError("weight config '" + path + "' is not valid JSON: " + e.what());
  }
  return mixed_weights_from_json(config, std::move(graph));
}

json to_json(const MotifWeights& weights, double lambda) {
  json layer;
  layer["k"] = weights.k();
  layer["lambda"] = lambda;
  layer["reading"] = reading_name(weights.reading());
  json rules = json::object();
  for (const auto& [cls, w] : weights.rule().entries()) rules[std::string(to_string(cls))] = w;
  layer["rules"] = rules;
  json overrides = json::array();
  for (const auto& [tuple, w] : weights.overrides()) {
    json entry = json::array();
    for (VertexId v : tuple.vertices()) entry.push_back(v);
    entry.push_back(w);
    overrides.push_back(entry);
  }
  layer["overrides"] = overrides;
  if (const auto& d = weights.random_draw()) {
    layer["random_draw"] = {{"class", std::string(to_string(d->target))},
                            {"low", d->low},
                            {"high", d->high},
                            {"seed", d->seed}};
  }
  return layer;
}

json to_json(const MixedWeights& mixed) {
  json layers = json::array();
  for (const auto& layer : mixed.layers()) layers.push_back(to_json(layer.weights, layer.lambda));
  return layers;
}

}  // namespace motifcc
