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

#ifndef MOTIFCC_GRAPH_H_
#define MOTIFCC_GRAPH_H_

// Vertex, graph, k-tuple and partition model shared by every other module.
// Vertices carry 1-based labels in [1..n].

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <iterator>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace motifcc {

using VertexId = std::int32_t;
using Arc = std::pair<VertexId, VertexId>;

// Binomial coefficient C(n, k); zero when k < 0 or k > n.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

class DirectedGraph {
 public:
  DirectedGraph() = default;

  // Throws InvalidVertexError on a label outside [1..n] and
  // InvalidParameterError on self-loops or duplicate arcs.
  DirectedGraph(int n, std::span<const Arc> arcs);
  DirectedGraph(int n, std::initializer_list<Arc> arcs)
      : DirectedGraph(n, std::span<const Arc>(arcs.begin(), arcs.size())) {}

  // Builds an undirected graph: each edge {u,v} becomes the arcs (u,v), (v,u).
  // Repeated edges in either orientation are merged.
  static DirectedGraph undirected(int n, std::span<const Arc> edges);
  static DirectedGraph undirected(int n, std::initializer_list<Arc> edges) {
    return undirected(n, std::span<const Arc>(edges.begin(), edges.size()));
  }

  int num_vertices() const { return n_; }
  std::size_t num_arcs() const { return num_arcs_; }

  bool has_arc(VertexId u, VertexId v) const;
  // True when the pair is joined in at least one direction.
  bool adjacent(VertexId u, VertexId v) const {
    return has_arc(u, v) || has_arc(v, u);
  }
  bool bidirectional(VertexId u, VertexId v) const {
    return has_arc(u, v) && has_arc(v, u);
  }
  // Every arc has its reverse.
  bool is_symmetric() const { return symmetric_; }

  // Arcs in lexicographic order.
  std::vector<Arc> arcs() const;
  std::vector<VertexId> out_neighbors(VertexId u) const;

  void check_vertex(VertexId v) const;

 private:
  std::size_t slot(VertexId u, VertexId v) const {
    return static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(v - 1);
  }

  int n_ = 0;
  std::size_t num_arcs_ = 0;
  bool symmetric_ = true;
  std::vector<std::uint8_t> adjacency_;
};

// A set of k >= 2 distinct vertices kept in ascending order.
class KTuple {
 public:
  KTuple() = default;
  // Sorts the input; throws InvalidParameterError on repeated vertices or
  // fewer than two vertices.
  explicit KTuple(std::vector<VertexId> vertices);
  KTuple(std::initializer_list<VertexId> vertices)
      : KTuple(std::vector<VertexId>(vertices)) {}

  std::size_t size() const { return vertices_.size(); }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }
  std::span<const VertexId> vertices() const { return vertices_; }
  bool contains(VertexId v) const;

  friend bool operator==(const KTuple&, const KTuple&) = default;
  friend auto operator<=>(const KTuple&, const KTuple&) = default;

  std::string to_string() const;

 private:
  friend class KTupleRange;
  std::vector<VertexId> vertices_;
};

struct KTupleHash {
  std::size_t operator()(const KTuple& t) const;
};

// Lazily enumerates every k-subset of a vertex set in lexicographic order of
// the sorted vertex lists. Nothing is materialized beyond the current tuple.
class KTupleRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = KTuple;
    using difference_type = std::ptrdiff_t;
    using pointer = const KTuple*;
    using reference = const KTuple&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_;
    }

   private:
    friend class KTupleRange;
    const std::vector<VertexId>* pool_ = nullptr;
    std::vector<std::size_t> index_;
    KTuple current_;
    bool done_ = true;
  };

  KTupleRange(std::vector<VertexId> pool, int k);
  iterator begin() const;
  iterator end() const { return iterator(); }
  // Number of tuples the range yields, C(|S|, k).
  std::uint64_t size() const;

 private:
  std::vector<VertexId> pool_;
  int k_;
};

// Throws InvalidParameterError when k < 2. The vertex set is deduplicated and
// sorted; k > |S| yields an empty range.
KTupleRange enumerate_ktuples(std::vector<VertexId> vertices, int k);
// All k-subsets of [1..n].
KTupleRange enumerate_ktuples(int n, int k);

// Position of a sorted tuple over [1..n] in the lexicographic enumeration.
std::size_t lex_rank(std::span<const VertexId> tuple, int n);

class Partition {
 public:
  Partition() = default;

  // Validates coverage of [1..n] and disjointness.
  static Partition from_clusters(int n,
                                 const std::vector<std::vector<VertexId>>& clusters);
  // labels[v-1] is an arbitrary cluster label of v.
  static Partition from_labels(std::span<const int> labels);
  static Partition singletons(int n);
  static Partition whole(int n);

  int num_vertices() const { return static_cast<int>(assignment_.size()); }
  int num_clusters() const { return static_cast<int>(clusters_.size()); }
  // Cluster index of v. Clusters are numbered by their smallest vertex.
  int cluster_of(VertexId v) const;
  bool same_cluster(VertexId u, VertexId v) const {
    return cluster_of(u) == cluster_of(v);
  }
  // Each cluster sorted; clusters ordered by smallest member.
  const std::vector<std::vector<VertexId>>& clusters() const { return clusters_; }
  const std::vector<int>& assignment() const { return assignment_; }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.assignment_ == b.assignment_;
  }

  std::string to_string() const;

 private:
  explicit Partition(std::vector<int> canonical_assignment);

  std::vector<int> assignment_;
  std::vector<std::vector<VertexId>> clusters_;
};

// Alias kept close to the operation name used by callers that build
// partitions from cluster lists.
inline Partition partition_from_cluster_list(
    int n, const std::vector<std::vector<VertexId>>& clusters) {
  return Partition::from_clusters(n, clusters);
}

// False exactly when every vertex of the tuple sits in one cluster.
bool is_split(std::span<const VertexId> tuple, const Partition& partition);
inline bool is_split(const KTuple& tuple, const Partition& partition) {
  return is_split(tuple.vertices(), partition);
}

struct EdgeListOptions {
  // Add the reverse of every arc.
  bool undirected = false;
  // Input labels start at 0; they are shifted to 1-based.
  bool zero_based = false;
  // Vertex count; 0 means the largest label seen.
  int num_vertices = 0;
};

// Tab (or whitespace) separated "u v" arc lines; '#' starts a comment line.
DirectedGraph read_edge_list(std::istream& in, const EdgeListOptions& options = {});
DirectedGraph load_edge_list(const std::string& path,
                             const EdgeListOptions& options = {});
void write_edge_list(std::ostream& out, const DirectedGraph& graph);

}  // namespace motifcc

#endif  // MOTIFCC_GRAPH_H_
