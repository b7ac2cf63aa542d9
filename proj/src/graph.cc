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

#include "motifcc/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "motifcc/errors.h"

namespace motifcc {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // Exact at every step: result * (n - k + i) is divisible by i.
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

// ---------------------------------------------------------------------------
// DirectedGraph

DirectedGraph::DirectedGraph(int n, std::span<const Arc> arcs) : n_(n) {
  if (n < 0) throw InvalidParameterError("vertex count must be non-negative");
  adjacency_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : arcs) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
      throw InvalidParameterError("self-loop on vertex " + std::to_string(u));
    }
    auto& cell = adjacency_[slot(u, v)];
    if (cell) {
      throw InvalidParameterError("duplicate arc (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    }
    cell = 1;
    ++num_arcs_;
  }
  for (VertexId u = 1; u <= n_ && symmetric_; ++u) {
    for (VertexId v = u + 1; v <= n_; ++v) {
      if (has_arc(u, v) != has_arc(v, u)) {
        symmetric_ = false;
        break;
      }
    }
  }
}

DirectedGraph DirectedGraph::undirected(int n, std::span<const Arc> edges) {
  std::set<Arc> arcs;
  for (const auto& [u, v] : edges) {
    arcs.emplace(u, v);
    arcs.emplace(v, u);
  }
  std::vector<Arc> list(arcs.begin(), arcs.end());
  return DirectedGraph(n, list);
}

void DirectedGraph::check_vertex(VertexId v) const {
  if (v < 1 || v > n_) {
    throw InvalidVertexError("vertex " + std::to_string(v) + " outside [1.." +
                             std::to_string(n_) + "]");
  }
}

bool DirectedGraph::has_arc(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return adjacency_[slot(u, v)] != 0;
}

std::vector<Arc> DirectedGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(num_arcs_);
  for (VertexId u = 1; u <= n_; ++u) {
    for (VertexId v = 1; v <= n_; ++v) {
      if (adjacency_[slot(u, v)]) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<VertexId> DirectedGraph::out_neighbors(VertexId u) const {
  check_vertex(u);
  std::vector<VertexId> out;
  for (VertexId v = 1; v <= n_; ++v) {
    if (adjacency_[slot(u, v)]) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// KTuple

KTuple::KTuple(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.size() < 2) {
    throw InvalidParameterError("a k-tuple needs at least two vertices");
  }
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InvalidParameterError("k-tuple has a repeated vertex");
  }
}

bool KTuple::contains(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::string KTuple::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(vertices_[i]);
  }
  return s + "}";
}

std::size_t KTupleHash::operator()(const KTuple& t) const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (VertexId v : t) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// KTupleRange

KTupleRange::KTupleRange(std::vector<VertexId> pool, int k)
    : pool_(std::move(pool)), k_(k) {
  if (k < 2) {
    throw InvalidParameterError("k-tuples need k >= 2, got " + std::to_string(k));
  }
  std::sort(pool_.begin(), pool_.end());
  pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
}

std::uint64_t KTupleRange::size() const {
  return binomial(static_cast<std::int64_t>(pool_.size()), k_);
}

KTupleRange::iterator KTupleRange::begin() const {
  iterator it;
  if (static_cast<std::size_t>(k_) > pool_.size()) return it;
  it.pool_ = &pool_;
  it.index_.resize(static_cast<std::size_t>(k_));
  it.current_.vertices_.resize(static_cast<std::size_t>(k_));
  for (std::size_t i = 0; i < it.index_.size(); ++i) {
    it.index_[i] = i;
    it.current_.vertices_[i] = pool_[i];
  }
  it.done_ = false;
  return it;
}

KTupleRange::iterator& KTupleRange::iterator::operator++() {
  const std::size_t k = index_.size();
  const std::size_t m = pool_->size();
  // Rightmost index that can still advance.
  std::size_t i = k;
  while (i > 0 && index_[i - 1] == m - k + (i - 1)) --i;
  if (i == 0) {
    done_ = true;
    return *this;
  }
  --i;
  ++index_[i];
  for (std::size_t j = i + 1; j < k; ++j) index_[j] = index_[j - 1] + 1;
  for (std::size_t j = i; j < k; ++j) current_.vertices_[j] = (*pool_)[index_[j]];
  return *this;
}

KTupleRange enumerate_ktuples(std::vector<VertexId> vertices, int k) {
  return KTupleRange(std::move(vertices), k);
}

KTupleRange enumerate_ktuples(int n, int k) {
  std::vector<VertexId> all(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return KTupleRange(std::move(all), k);
}

std::size_t lex_rank(std::span<const VertexId> tuple, int n) {
  // Count the tuples that precede `tuple`: at position i every smaller choice
  // c in (previous, tuple[i]) leaves C(n - c, k - i - 1) completions.
  const auto k = static_cast<std::int64_t>(tuple.size());
  std::size_t rank = 0;
  VertexId previous = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    for (VertexId c = previous + 1; c < tuple[static_cast<std::size_t>(i)]; ++c) {
      rank += binomial(n - c, k - i - 1);
    }
    previous = tuple[static_cast<std::size_t>(i)];
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<int> canonical_assignment)
    : assignment_(std::move(canonical_assignment)) {
  int count = 0;
  for (int c : assignment_) count = std::max(count, c + 1);
  clusters_.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    clusters_[static_cast<std::size_t>(assignment_[i])].push_back(
        static_cast<VertexId>(i + 1));
  }
}

Partition Partition::from_labels(std::span<const int> labels) {
  std::map<int, int> renumber;
  std::vector<int> canonical(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] =
        renumber.emplace(labels[i], static_cast<int>(renumber.size()));
    canonical[i] = it->second;
  }
  return Partition(std::move(canonical));
}

Partition Partition::from_clusters(int n,
                                   const std::vector<std::vector<VertexId>>& clusters) {
  using Kind = MalformedPartitionError::Kind;
  std::vector<int> labels(static_cast<std::size_t>(std::max(n, 0)), -1);
  int label = 0;
  for (const auto& cluster : clusters) {
    if (cluster.empty()) continue;
    for (VertexId v : cluster) {
      if (v < 1 || v > n) {
        throw MalformedPartitionError(Kind::kOutOfRange, v,
                                      "vertex " + std::to_string(v) +
                                          " outside [1.." + std::to_string(n) + "]");
      }
      int& slot = labels[static_cast<std::size_t>(v - 1)];
      if (slot != -1) {
        throw MalformedPartitionError(
            Kind::kOverlap, v,
            "vertex " + std::to_string(v) + " appears in more than one cluster");
      }
      slot = label;
    }
    ++label;
  }
  for (int i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)] == -1) {
      throw MalformedPartitionError(
          Kind::kCoverage, i + 1,
          "vertex " + std::to_string(i + 1) + " is not covered by any cluster");
    }
  }
  return from_labels(labels);
}

Partition Partition::singletons(int n) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
  return Partition(std::move(labels));
}

Partition Partition::whole(int n) {
  return Partition(std::vector<int>(static_cast<std::size_t>(n), 0));
}

int Partition::cluster_of(VertexId v) const {
  if (v < 1 || v > num_vertices()) {
    throw InvalidVertexError("vertex " + std::to_string(v) + " outside [1.." +
                             std::to_string(num_vertices()) + "]");
  }
  return assignment_[static_cast<std::size_t>(v - 1)];
}

std::string Partition::to_string() const {
  std::string s = "{";
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    if (c) s += ",";
    s += "{";
    for (std::size_t i = 0; i < clusters_[c].size(); ++i) {
      if (i) s += ",";
      s += std::to_string(clusters_[c][i]);
    }
    s += "}";
  }
  return s + "}";
}

bool is_split(std::span<const VertexId> tuple, const Partition& partition) {
  if (tuple.empty()) return false;
  const int first = partition.cluster_of(tuple.front());
  bool split = false;
  for (VertexId v : tuple) {
    // cluster_of validates every vertex, so keep scanning after a mismatch.
    if (partition.cluster_of(v) != first) split = true;
  }
  return split;
}

// ---------------------------------------------------------------------------
// Edge lists

DirectedGraph read_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<Arc> arcs;
  std::string line;
  int line_no = 0;
  VertexId max_label = 0;
  int declared = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      // "# vertices N" keeps isolated trailing vertices.
      std::istringstream header(line.substr(first + 1));
      std::string key;
      int count = 0;
      if (header >> key >> count && key == "vertices" && count > 0) declared = count;
      continue;
    }
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    if (!(fields >> u >> v)) {
      throw ConfigError("edge list line " + std::to_string(line_no) +
                        ": expected two integer labels");
    }
    if (options.zero_based) {
      ++u;
      ++v;
    }
    if (u < 1 || v < 1 || u > std::numeric_limits<VertexId>::max() ||
        v > std::numeric_limits<VertexId>::max()) {
      throw InvalidVertexError("edge list line " + std::to_string(line_no) +
                               ": label out of range");
    }
    arcs.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    max_label = std::max({max_label, static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  const int n = options.num_vertices > 0 ? options.num_vertices
                                         : std::max<int>(declared, max_label);
  if (options.undirected) return DirectedGraph::undirected(n, arcs);
  return DirectedGraph(n, arcs);
}

DirectedGraph load_edge_list(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list '" + path + "'");
  return read_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const DirectedGraph& graph) {
  out << "# vertices " << graph.num_vertices() << "\n";
  for (const auto& [u, v] : graph.arcs()) out << u << '\t' << v << '\n';
}

}  // namespace motifcc
