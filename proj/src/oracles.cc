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

#include "motifcc/oracles.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>

#include "motifcc/errors.h"
#include "motifcc/lp_model.h"

namespace motifcc {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// One weighted tuple with lambda folded in.
struct Item {
  std::vector<VertexId> vertices;
  double plus = 0.0;
  double minus = 0.0;
};

std::vector<Item> collect_items(const MixedWeights& mixed) {
  std::vector<Item> items;
  const int n = mixed.num_vertices();
  for (const auto& layer : mixed.layers()) {
    if (layer.lambda == 0.0) continue;
    for (const KTuple& t : enumerate_ktuples(n, layer.k())) {
      const WeightPair w = layer.weights.resolve(t);
      items.push_back({std::vector<VertexId>(t.begin(), t.end()), layer.lambda * w.plus,
                       layer.lambda * w.minus});
    }
  }
  // Sorted by largest vertex, the order in which tuples become fully assigned.
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.vertices.back() < b.vertices.back();
  });
  return items;
}

double items_cost(const std::vector<Item>& items, std::span<const int> labels) {
  double cost = 0.0;
  for (const Item& item : items) {
    const int first = labels[static_cast<std::size_t>(item.vertices.front() - 1)];
    bool split = false;
    for (VertexId v : item.vertices) split = split || labels[static_cast<std::size_t>(v - 1)] != first;
    cost += split ? item.plus : item.minus;
  }
  return cost;
}

void check_cap(int n, const ExactOptions& options) {
  if (n > options.max_vertices) {
    throw SizeLimitError("exact search is capped at n = " + std::to_string(options.max_vertices) +
                         " (got n = " + std::to_string(n) + ")");
  }
}

class BranchAndBound {
 public:
  BranchAndBound(int n, std::vector<Item> items) : n_(n), items_(std::move(items)) {
    labels_.assign(static_cast<std::size_t>(n), 0);
    // first_pending_[d]: first item whose largest vertex exceeds d.
    first_pending_.assign(static_cast<std::size_t>(n) + 1, 0);
    std::size_t i = 0;
    for (int d = 0; d <= n; ++d) {
      while (i < items_.size() && items_[i].vertices.back() <= d) ++i;
      first_pending_[static_cast<std::size_t>(d)] = i;
    }
  }

  void seed_incumbent(std::span<const int> labels) {
    const double cost = items_cost(items_, labels);
    if (cost < best_cost_) {
      best_cost_ = cost;
      best_.assign(labels.begin(), labels.end());
    }
  }

  void run() {
    if (n_ == 0) {
      best_cost_ = 0.0;
      best_.clear();
      return;
    }
    labels_[0] = 0;
    search(1, 1, determined_cost(1, 0));
  }

  double best_cost() const { return best_cost_; }
  const std::vector<int>& best_labels() const { return best_; }

 private:
  // Cost of items whose vertices all lie in [1..d] but not in [1..d-1].
  double determined_cost(int d, double base) const {
    double cost = base;
    for (std::size_t i = first_pending_[static_cast<std::size_t>(d - 1)];
         i < first_pending_[static_cast<std::size_t>(d)]; ++i) {
      cost += split_so_far(items_[i], d) ? items_[i].plus : items_[i].minus;
    }
    return cost;
  }

  bool split_so_far(const Item& item, int d) const {
    int first = -1;
    for (VertexId v : item.vertices) {
      if (v > d) break;
      const int label = labels_[static_cast<std::size_t>(v - 1)];
      if (first < 0) first = label;
      else if (label != first) return true;
    }
    return false;
  }

  double pending_bound(int d) const {
    double bound = 0.0;
    for (std::size_t i = first_pending_[static_cast<std::size_t>(d)]; i < items_.size(); ++i) {
      const Item& item = items_[i];
      bound += split_so_far(item, d) ? item.plus : std::min(item.plus, item.minus);
    }
    return bound;
  }

  // Vertices 1..d are labeled; `blocks` blocks are open.
  void search(int d, int blocks, double cost) {
    if (cost + pending_bound(d) >= best_cost_) return;
    if (d == n_) {
      best_cost_ = cost;
      best_ = labels_;
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      labels_[static_cast<std::size_t>(d)] = b;
      search(d + 1, std::max(blocks, b + 1), determined_cost(d + 1, cost));
    }
  }

  int n_;
  std::vector<Item> items_;
  std::vector<std::size_t> first_pending_;
  std::vector<int> labels_;
  std::vector<int> best_;
  double best_cost_ = std::numeric_limits<double>::infinity();
};

ClusteringReport make_report(Partition partition, const MixedWeights& mixed, std::string solver,
                             Clock::time_point start) {
  ClusteringReport report;
  report.cost = evaluate_objective(partition, mixed);
  report.partition = std::move(partition);
  report.solver = std::move(solver);
  report.wall_seconds = seconds_since(start);
  return report;
}

std::vector<VertexId> all_vertices(int n) {
  std::vector<VertexId> s(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) s[static_cast<std::size_t>(v - 1)] = v;
  return s;
}

void erase_vertices(std::vector<VertexId>& s, const std::vector<VertexId>& gone) {
  std::erase_if(s, [&gone](VertexId v) {
    return std::find(gone.begin(), gone.end(), v) != gone.end();
  });
}

}  // namespace

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw InvalidParameterError("bell_number is exact for 0 <= n <= 25");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void for_each_partition(int n, const std::function<void(std::span<const int>)>& visit) {
  if (n < 0) throw InvalidParameterError("negative vertex count");
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  // prefix_max[i] = max(a[0..i]).
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(a);
    int i = n - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
    if (i <= 0) return;
    ++a[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] =
        std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(j - 1)];
    }
  }
}

void for_each_partition_by_insertion(
    int n, const std::function<void(const std::vector<std::vector<VertexId>>&)>& visit) {
  if (n < 0) throw InvalidParameterError("negative vertex count");
  std::vector<std::vector<VertexId>> blocks;
  std::function<void(VertexId)> place = [&](VertexId v) {
    if (v > n) {
      visit(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(v);
      place(v + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({v});
    place(v + 1);
    blocks.pop_back();
  };
  place(1);
}

ClusteringReport exact_min_disagree(const MixedWeights& mixed, const ExactOptions& options) {
  const auto start = Clock::now();
  const int n = mixed.num_vertices();
  check_cap(n, options);
  BranchAndBound search(n, collect_items(mixed));
  const std::vector<int> whole(static_cast<std::size_t>(n), 0);
  std::vector<int> singletons(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) singletons[static_cast<std::size_t>(v)] = v;
  search.seed_incumbent(whole);
  search.seed_incumbent(singletons);
  search.run();
  return make_report(n == 0 ? Partition() : Partition::from_labels(search.best_labels()), mixed,
                     "exact-branch-and-bound", start);
}

ClusteringReport exact_min_disagree_enumerated(const MixedWeights& mixed,
                                               const ExactOptions& options) {
  const auto start = Clock::now();
  const int n = mixed.num_vertices();
  check_cap(n, options);
  const std::vector<Item> items = collect_items(mixed);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_labels;
  for_each_partition(n, [&](std::span<const int> labels) {
    const double cost = items_cost(items, labels);
    if (cost < best) {
      best = cost;
      best_labels.assign(labels.begin(), labels.end());
    }
  });
  return make_report(n == 0 ? Partition() : Partition::from_labels(best_labels), mixed,
                     "exact-enumeration", start);
}

double agreement(const Partition& partition, const MixedWeights& mixed) {
  double total = 0.0;
  for (const auto& layer : mixed.layers()) {
    if (layer.lambda == 0.0) continue;
    double sum = 0.0;
    for (const KTuple& t : enumerate_ktuples(partition.num_vertices(), layer.k())) {
      const WeightPair w = layer.weights.resolve(t);
      sum += is_split(t, partition) ? w.minus : w.plus;
    }
    total += layer.lambda * sum;
  }
  return total;
}

ClusteringReport maxagree_2approx(const MixedWeights& mixed) {
  const auto start = Clock::now();
  const int n = mixed.num_vertices();
  Partition whole = Partition::whole(n);
  Partition singletons = Partition::singletons(n);
  const bool pick_whole = agreement(whole, mixed) >= agreement(singletons, mixed);
  return make_report(pick_whole ? std::move(whole) : std::move(singletons), mixed,
                     "maxagree-2approx", start);
}

SignedGraph::SignedGraph(int n) : n_(n) {
  if (n < 0) throw InvalidParameterError("negative vertex count");
  positive_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

SignedGraph SignedGraph::from_graph(const DirectedGraph& graph) {
  SignedGraph signs(graph.num_vertices());
  for (const auto& [u, v] : graph.arcs()) signs.set_positive(u, v);
  return signs;
}

SignedGraph SignedGraph::from_pair_weights(const MotifWeights& pair_weights, double threshold) {
  if (pair_weights.k() != 2) throw InvalidParameterError("pair signs need a size-2 layer");
  SignedGraph signs(pair_weights.num_vertices());
  for (const KTuple& t : enumerate_ktuples(pair_weights.num_vertices(), 2)) {
    if (pair_weights.resolve(t).plus > threshold) signs.set_positive(t[0], t[1]);
  }
  return signs;
}

bool SignedGraph::positive(VertexId u, VertexId v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) {
    throw InvalidVertexError("pair (" + std::to_string(u) + "," + std::to_string(v) +
                             ") out of range");
  }
  return positive_[static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(v - 1)] != 0;
}

void SignedGraph::set_positive(VertexId u, VertexId v, bool value) {
  if (u < 1 || u > n_ || v < 1 || v > n_ || u == v) {
    throw InvalidVertexError("invalid pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  const auto nn = static_cast<std::size_t>(n_);
  positive_[static_cast<std::size_t>(u - 1) * nn + static_cast<std::size_t>(v - 1)] = value;
  positive_[static_cast<std::size_t>(v - 1) * nn + static_cast<std::size_t>(u - 1)] = value;
}

std::vector<VertexId> SignedGraph::positive_neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId u = 1; u <= n_; ++u) {
    if (u != v && positive(v, u)) out.push_back(u);
  }
  return out;
}

std::vector<std::pair<VertexId, VertexId>> SignedGraph::positive_edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId u = 1; u <= n_; ++u) {
    for (VertexId v = u + 1; v <= n_; ++v) {
      if (positive(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

ClusteringReport pivot_vertex_baseline(const SignedGraph& signs, const MixedWeights& mixed,
                                       std::uint64_t seed) {
  const auto start = Clock::now();
  std::mt19937_64 rng(seed);
  std::vector<VertexId> s = all_vertices(signs.num_vertices());
  std::vector<std::vector<VertexId>> clusters;
  while (!s.empty()) {
    const VertexId pivot = s[static_cast<std::size_t>(rng() % s.size())];
    std::vector<VertexId> cluster;
    for (VertexId u : s) {
      if (u == pivot || signs.positive(pivot, u)) cluster.push_back(u);
    }
    erase_vertices(s, cluster);
    clusters.push_back(std::move(cluster));
  }
  auto report = make_report(Partition::from_clusters(signs.num_vertices(), clusters), mixed,
                            "pivot-vertex", start);
  report.seed = seed;
  return report;
}

ClusteringReport pivot_edge_baseline(const SignedGraph& signs, const MixedWeights& mixed,
                                     std::uint64_t seed,
                                     std::optional<std::pair<VertexId, VertexId>> first_edge) {
  const auto start = Clock::now();
  std::mt19937_64 rng(seed);
  if (first_edge && !signs.positive(first_edge->first, first_edge->second)) {
    throw InvalidParameterError("forced pivot edge is not positive");
  }
  std::vector<VertexId> s = all_vertices(signs.num_vertices());
  std::vector<std::vector<VertexId>> clusters;
  while (!s.empty()) {
    std::pair<VertexId, VertexId> edge;
    if (first_edge) {
      edge = *first_edge;
      first_edge.reset();
    } else {
      std::vector<std::pair<VertexId, VertexId>> candidates;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (signs.positive(s[i], s[j])) candidates.emplace_back(s[i], s[j]);
        }
      }
      if (candidates.empty()) {
        for (VertexId v : s) clusters.push_back({v});
        break;
      }
      edge = candidates[static_cast<std::size_t>(rng() % candidates.size())];
    }
    std::vector<VertexId> cluster;
    for (VertexId u : s) {
      if (u == edge.first || u == edge.second || signs.positive(edge.first, u) ||
          signs.positive(edge.second, u)) {
        cluster.push_back(u);
      }
    }
    erase_vertices(s, cluster);
    clusters.push_back(std::move(cluster));
  }
  auto report = make_report(Partition::from_clusters(signs.num_vertices(), clusters), mixed,
                            "pivot-edge", start);
  report.seed = seed;
  return report;
}

double expected_pivot_vertex_cost(const SignedGraph& signs, const MixedWeights& mixed, int runs,
                                  std::uint64_t first_seed) {
  if (runs < 1) throw InvalidParameterError("need at least one run");
  double total = 0.0;
  for (int r = 0; r < runs; ++r) {
    total += pivot_vertex_baseline(signs, mixed, first_seed + static_cast<std::uint64_t>(r)).cost;
  }
  return total / runs;
}

DirectedGraph make_fig2a() {
  return DirectedGraph::undirected(6, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}, {1, 4}});
}

DirectedGraph make_fig2b(int n) {
  if (n < 7) throw InvalidParameterError("make_fig2b needs n >= 7");
  std::vector<Arc> edges{{1, 2}, {1, 3}, {2, 3}, {3, 4}};
  for (VertexId u = 4; u <= n; ++u) {
    for (VertexId v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  }
  return DirectedGraph::undirected(n, edges);
}

DirectedGraph make_anomaly(std::uint64_t seed) {
  constexpr int kVertices = 22;
  std::vector<Arc> arcs;
  // Regular tournament on 1..5 (i -> i+1, i -> i+2 mod 5), then vertex 6
  // beats 1, 2, 3 and loses to 4, 5. Scores (2,2,2,3,3,3) leave
  // C(6,3) - 3*C(2,2) - 3*C(3,2) = 8 cyclic triples.
  for (int i = 0; i < 5; ++i) {
    arcs.emplace_back(1 + i, 1 + (i + 1) % 5);
    arcs.emplace_back(1 + i, 1 + (i + 2) % 5);
  }
  arcs.insert(arcs.end(), {{6, 1}, {6, 2}, {6, 3}, {4, 6}, {5, 6}});
  // Receivers 7..14 and senders 15..22 are disjoint, so no directed 3-cycle
  // passes through two anomaly vertices.
  // closes[u][v]: an arc u -> v would close a 3-cycle through an anomaly vertex.
  std::vector<std::vector<bool>> closes(kVertices + 1, std::vector<bool>(kVertices + 1, false));
  for (int a = 0; a < kAnomalySize; ++a) {
    for (int j = 0; j < 4; ++j) arcs.emplace_back(1 + a, 7 + (2 * a + j) % 8);
    for (int j = 0; j < 2; ++j) arcs.emplace_back(15 + (a + 3 * j) % 8, 1 + a);
    for (int j = 0; j < 4; ++j) {
      for (int i = 0; i < 2; ++i) closes[7 + (2 * a + j) % 8][15 + (a + 3 * i) % 8] = true;
    }
  }
  // Background arcs skip those pairs, so the anomaly keeps exactly its 8
  // cycles. The draw is consumed either way.
  std::mt19937_64 rng(seed);
  for (VertexId u = 7; u <= kVertices; ++u) {
    for (VertexId v = 7; v <= kVertices; ++v) {
      if (u == v) continue;
      const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (draw < 0.25 && !closes[u][v]) arcs.emplace_back(u, v);
    }
  }
  return DirectedGraph(kVertices, arcs);
}

std::vector<std::vector<VertexId>> layered_flow_layers() {
  return {{1, 2, 3}, {4, 5, 6, 7, 8}, {9, 10, 11}};
}

DirectedGraph make_layered_flow() {
  std::vector<Arc> arcs{{1, 2}, {2, 3}, {3, 1}, {9, 10}, {10, 11}, {11, 9}};
  for (int i = 0; i < 5; ++i) {
    arcs.emplace_back(4 + i, 4 + (i + 1) % 5);
    arcs.emplace_back(4 + i, 4 + (i + 2) % 5);
  }
  arcs.insert(arcs.end(),
              {{1, 4}, {2, 5}, {3, 6}, {2, 4}, {6, 9}, {7, 10}, {8, 11}, {5, 9}, {10, 1}});
  return DirectedGraph(11, arcs);
}

}  // namespace motifcc
