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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "motifcc/errors.h"
#include "test_util.h"

namespace motifcc {
namespace {

RunConfig generated(const std::string& generator) {
  RunConfig config;
  config.instance.generator = generator;
  return config;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("motifcc_" + name);
  std::ofstream(path) << body;
  return path.string();
}

TEST(Pipeline, TwoTrianglesAllRelaxations) {
  for (Relaxation r : {Relaxation::kLp1, Relaxation::kLp2, Relaxation::kLp3}) {
    RunConfig config = generated("fig2a");
    config.relaxation = r;
    const Report report = run(config);
    EXPECT_EQ(report.partition, partition_from_cluster_list(6, {{1, 2, 3}, {4, 5, 6}}))
        << to_string(r);
    EXPECT_NEAR(report.cost, 0.0, 1e-9);
    EXPECT_NEAR(report.lp_value, 0.0, 1e-6);
  }
}

TEST(Pipeline, ParamModesAndRatio) {
  RunConfig lp1 = generated("fig2a");
  lp1.relaxation = Relaxation::kLp1;
  const Report a = run(lp1);
  EXPECT_EQ(a.param_mode, "mcc-lp1");
  EXPECT_DOUBLE_EQ(a.ratio, 6.0);

  RunConfig exp = generated("fig2a");
  exp.relaxation = Relaxation::kLp2;
  exp.alpha = 0.25;
  exp.beta = 0.2;
  const Report b = run(exp);
  EXPECT_EQ(b.param_mode, "explicit");
  EXPECT_DOUBLE_EQ(b.ratio, 1.0 / (0.25 * 0.2));
}

TEST(Pipeline, BreakdownSumsToCost) {
  RunConfig config = generated("anomaly:3");
  const Report report = run(config);
  double total = 0.0;
  for (const auto& [key, entry] : report.breakdown) {
    total += entry.split_positive + entry.contained_negative;
  }
  EXPECT_NEAR(total, report.cost, 1e-9);
  EXPECT_LE(report.cost, report.ratio * report.lp_value + 1e-6);
}

TEST(Pipeline, ReportIsReproducible) {
  RunConfig config = generated("fig2b:8");
  const std::string a = to_json(run(config), false).dump();
  const std::string b = to_json(run(config), false).dump();
  EXPECT_EQ(a, b);
  const nlohmann::json j = nlohmann::json::parse(a);
  EXPECT_FALSE(j.contains("seconds"));
  for (const char* key : {"config", "instance", "clusters", "cost", "lp", "rounding"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Pipeline, StageErrorsCarryStageAndCode) {
  RunConfig missing;
  missing.instance.input_path = "/nonexistent/graph.tsv";
  try {
    run(missing);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "load");
    EXPECT_EQ(e.exit_code(), kExitConfig);
  }

  RunConfig two_layers = generated("fig2a");
  two_layers.method = KarateMethod::kMMCC;
  two_layers.relaxation = Relaxation::kLp2;
  try {
    run(two_layers);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "build");
    EXPECT_EQ(e.exit_code(), kExitConfig);
  }

  RunConfig starved = generated("fig2b:9");
  starved.solver.max_iterations = 2;
  try {
    run(starved);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "solve");
    EXPECT_EQ(e.exit_code(), kExitSolver);
  }

  RunConfig bad_alpha = generated("fig2a");
  bad_alpha.alpha = 0.9;
  bad_alpha.beta = 0.1;
  try {
    run(bad_alpha);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "round");
  }
}

TEST(Pipeline, ExitCodes) {
  EXPECT_EQ(exit_code_for(CertificateViolationError("x")), kExitCertificate);
  EXPECT_EQ(exit_code_for(SolverError("x")), kExitSolver);
  EXPECT_EQ(exit_code_for(ConfigError("x")), kExitConfig);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), kExitFailure);
  EXPECT_EQ(exit_code_for(StageError("round", "x", 4)), 4);
}

TEST(Pipeline, WeightSources) {
  const Instance inst = load_instance({.generator = "fig2a"});
  RunConfig inline_json = generated("fig2a");
  inline_json.weights_json = nlohmann::json::parse(
      R"({"layers": [{"k": 2, "lambda": 1.0, "rules": {"Edge": 1.0, "NonEdge": 0.0}}]})");
  RunConfig preset = generated("fig2a");
  preset.method = KarateMethod::kCC;
  EXPECT_EQ(resolve_weights(preset, inst).max_k(), 2);
  // Inline JSON wins over a method.
  inline_json.method = KarateMethod::kMCC;
  EXPECT_NO_THROW({
    const MixedWeights w = resolve_weights(inline_json, inst);
    EXPECT_EQ(w.max_k(), 2);
  });
  RunConfig filtered = generated("fig2a");
  filtered.method = KarateMethod::kMMCC;
  filtered.layer_k = 3;
  const MixedWeights only3 = resolve_weights(filtered, inst);
  ASSERT_EQ(only3.layers().size(), 1u);
  EXPECT_EQ(only3.max_k(), 3);
  EXPECT_DOUBLE_EQ(only3.layers()[0].lambda, 1.0);
}

TEST(Pipeline, UnknownGenerator) {
  EXPECT_THROW(load_instance({.generator = "nope"}), Error);
  EXPECT_THROW(relaxation_from_string("lp9"), ConfigError);
}

// Fewest misplaced vertices over every one-to-one cluster/class matching,
// by trying all permutations.
std::size_t brute_misassigned(const Partition& p, const std::vector<int>& ref) {
  const int classes = *std::max_element(ref.begin(), ref.end()) + 1;
  const int size = std::max(p.num_clusters(), classes);
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = ref.size();
  do {
    std::size_t wrong = 0;
    for (VertexId v = 1; v <= p.num_vertices(); ++v) {
      if (perm[static_cast<std::size_t>(p.cluster_of(v))] != ref[static_cast<std::size_t>(v - 1)]) {
        ++wrong;
      }
    }
    best = std::min(best, wrong);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(ScoreAgainst, MatchesBruteForce) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::vector<int> ref(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      labels[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 4);
      ref[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 3);
    }
    // Classes as 0..c-1 with no gaps.
    std::vector<int> seen;
    for (int& r : ref) {
      auto it = std::find(seen.begin(), seen.end(), r);
      if (it == seen.end()) {
        seen.push_back(r);
        it = seen.end() - 1;
      }
      r = static_cast<int>(it - seen.begin());
    }
    const Partition p = Partition::from_labels(labels);
    const ReferenceScore s = score_against(p, ref);
    ASSERT_EQ(s.misassigned.size(), brute_misassigned(p, ref)) << trial;
  }
}

TEST(ScoreAgainst, RandIndex) {
  const Partition p = partition_from_cluster_list(4, {{1, 2}, {3, 4}});
  const std::vector<int> same = {5, 5, 7, 7};
  EXPECT_DOUBLE_EQ(score_against(p, same).rand_index, 1.0);
  EXPECT_TRUE(score_against(p, same).misassigned.empty());
  const std::vector<int> one = {0, 0, 0, 0};
  // Pairs (1,2), (3,4) agree out of six.
  EXPECT_DOUBLE_EQ(score_against(p, one).rand_index, 2.0 / 6.0);
}

TEST(ReadLabels, ParsesAndRejects) {
  const std::string good = temp_file("labels_ok", "# v label\n1 0\n3 1\n2 0\n");
  EXPECT_EQ(read_labels(good, 3), (std::vector<int>{0, 0, 1}));
  EXPECT_THROW(read_labels(temp_file("labels_dup", "1 0\n1 1\n2 0\n"), 2), Error);
  EXPECT_THROW(read_labels(temp_file("labels_range", "1 0\n4 1\n"), 2), Error);
  EXPECT_THROW(read_labels(temp_file("labels_gap", "1 0\n"), 2), Error);
}

TEST(ReadLabels, KarateFactions) {
  const std::vector<int> f = read_labels(testing::data_path("karate_factions.tsv"), 34);
  EXPECT_NE(f[0], f[33]);
  EXPECT_EQ(f[8], f[33]);
  EXPECT_EQ(std::count(f.begin(), f.end(), f[0]), 16);
}

TEST(Compare, RejectsDifferentInstances) {
  RunConfig a = generated("fig2a");
  RunConfig b = generated("fig2b:7");
  try {
    compare({a, b});
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "compare");
    EXPECT_EQ(e.exit_code(), kExitConfig);
  }
}

TEST(Compare, IdenticalConfigsGiveIdenticalRows) {
  RunConfig a = generated("fig2b:8");
  a.name = "x";
  RunConfig b = a;
  b.name = "y";
  const ComparisonTable t = compare({a, b});
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.columns.front(), "name");
  EXPECT_EQ(std::vector<std::string>(t.rows[0].begin() + 1, t.rows[0].end()),
            std::vector<std::string>(t.rows[1].begin() + 1, t.rows[1].end()));
  const std::string csv = t.to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
}  // namespace motifcc
