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

#ifndef MOTIFCC_ORACLES_H_
#define MOTIFCC_ORACLES_H_

// Exact solvers, simple baselines and instance generators.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "motifcc/graph.h"
#include "motifcc/motif.h"

namespace motifcc {

struct ClusteringReport {
  Partition partition;
  // Disagreement objective of `partition`.
  double cost = 0.0;
  std::optional<double> lp_bound;
  std::optional<double> ratio;
  std::string solver;
  std::optional<std::uint64_t> seed;
  double wall_seconds = 0.0;
};

// Bell(n), exact for n <= 25.
std::uint64_t bell_number(int n);

// Visits every set partition of [1..n] as a restricted-growth string
// (labels[v-1] is the block of v; block b opens only after block b-1).
void for_each_partition(int n, const std::function<void(std::span<const int>)>& visit);

// Same set of partitions, built by inserting vertex v into each block of every
// partition of [1..v-1] or into a new block. Independent of the above; used to
// cross-check it.
void for_each_partition_by_insertion(
    int n, const std::function<void(const std::vector<std::vector<VertexId>>&)>& visit);

struct ExactOptions {
  // Largest n accepted.
  int max_vertices = 10;
};

// Global minimum of the disagreement objective. Depth-first search over
// restricted-growth strings, pruned by a lower bound on the unassigned part.
// Throws SizeLimitError when n exceeds the cap.
ClusteringReport exact_min_disagree(const MixedWeights& mixed, const ExactOptions& options = {});

// Plain enumeration without pruning; tiny n only.
ClusteringReport exact_min_disagree_enumerated(const MixedWeights& mixed,
                                               const ExactOptions& options = {});

// Sum over layers of lambda * (w+ of contained tuples + w- of split tuples).
double agreement(const Partition& partition, const MixedWeights& mixed);

// Better of all-singletons and one cluster by agreement; ties go to one cluster.
ClusteringReport maxagree_2approx(const MixedWeights& mixed);

// Complete graph with +/- labels; only the positive pairs are stored.
class SignedGraph {
 public:
  explicit SignedGraph(int n);
  // Positive exactly on the adjacent pairs of `graph`.
  static SignedGraph from_graph(const DirectedGraph& graph);
  // Positive where the size-2 layer has w+ > threshold.
  static SignedGraph from_pair_weights(const MotifWeights& pair_weights, double threshold = 0.5);

  int num_vertices() const { return n_; }
  bool positive(VertexId u, VertexId v) const;
  void set_positive(VertexId u, VertexId v, bool value = true);
  std::vector<VertexId> positive_neighbors(VertexId v) const;
  std::vector<std::pair<VertexId, VertexId>> positive_edges() const;

 private:
  int n_;
  std::vector<std::uint8_t> positive_;
};

// Random pivot, cluster = pivot plus its positive neighbors still unclustered.
ClusteringReport pivot_vertex_baseline(const SignedGraph& signs, const MixedWeights& mixed,
                                       std::uint64_t seed);

// Random positive edge {u,v}, cluster = {u,v} plus the positive neighbors of
// u and v still unclustered. Once no positive edge is left the remaining
// vertices become singletons. `first_edge` fixes the first pivot edge.
ClusteringReport pivot_edge_baseline(
    const SignedGraph& signs, const MixedWeights& mixed, std::uint64_t seed,
    std::optional<std::pair<VertexId, VertexId>> first_edge = std::nullopt);

// Mean pivot_vertex_baseline cost over seeds first_seed .. first_seed+runs-1.
double expected_pivot_vertex_cost(const SignedGraph& signs, const MixedWeights& mixed, int runs,
                                  std::uint64_t first_seed = 1);

// Two triangles {1,2,3}, {4,5,6} joined by the edge {1,4}.
DirectedGraph make_fig2a();
// Triangle {1,2,3}, edge {3,4} and a clique on {4..n}. Requires n >= 7.
DirectedGraph make_fig2b(int n);

// 22 vertices. Vertices 1..6 form a tournament with 8 cyclic triples and no
// bidirectional pair; each of them sends arcs to 4 vertices of 7..14 and
// receives arcs from 2 vertices of 15..22. Arcs among 7..22 are drawn
// independently with probability 0.25 from `seed`, except those that would
// close a directed 3-cycle through an anomaly vertex.
DirectedGraph make_anomaly(std::uint64_t seed);
inline constexpr int kAnomalySize = 6;

// Three layers {1,2,3}, {4..8}, {9,10,11}, each made of directed 3-cycles,
// joined by forward arcs plus one back-arc 10 -> 1.
DirectedGraph make_layered_flow();
std::vector<std::vector<VertexId>> layered_flow_layers();

}  // namespace motifcc

#endif  // MOTIFCC_ORACLES_H_
