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

#ifndef MOTIFCC_WEIGHT_CONFIG_H_
#define MOTIFCC_WEIGHT_CONFIG_H_

// JSON weight-rule configs.
//
// One layer:
//   {"k": 3, "rules": {"DirectedThreeCycle": 1.0, "OtherTriple": 0.41},
//    "overrides": [[u, v, w, w_plus], ...]}
// optional keys: "lambda" (default 1), "reading" ("auto" | "directed" |
// "undirected"), "random_draw": {"class", "low", "high", "seed"}.
//
// Mixed: a JSON list of layers, or {"layers": [...]}.
// Presets: {"preset": "CC" | "MCC" | "MMCC" | "anomaly" | "flow" | "triangles"}.

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "motifcc/motif.h"

namespace motifcc {

MotifWeights motif_weights_from_json(const nlohmann::json& layer,
                                     std::shared_ptr<const DirectedGraph> graph);
MixedWeights mixed_weights_from_json(const nlohmann::json& config,
                                     std::shared_ptr<const DirectedGraph> graph);
MixedWeights load_weight_config(const std::string& path,
                                std::shared_ptr<const DirectedGraph> graph);

nlohmann::json to_json(const MotifWeights& weights, double lambda = 1.0);
nlohmann::json to_json(const MixedWeights& mixed);

}  // namespace motifcc

#endif  // MOTIFCC_WEIGHT_CONFIG_H_
