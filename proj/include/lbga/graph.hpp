#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lbga {

using Vertex = std::uint32_t;
using VertexPair = std::pair<Vertex, Vertex>;

/**
   Undirected simple graph on the vertex set {0, ..., n-1}.

   Adjacency is stored in CSR form with every neighbor list sorted ascending.
   Self-loops and parallel edges in the input are dropped at construction.
   Instances are immutable once built.
 */
class Graph {
public:
  Graph() = default;

  /// Empty graph on n vertices.
  explicit Graph(std::size_t n);

  /// Build from an arbitrary edge list. Pairs may appear in either
  /// orientation and more than once.
  Graph(std::size_t n, std::span<const VertexPair> edges);

  /// Build from pairs that are already normalized (u < v), sorted
  /// lexicographically and unique. Skips the sort/dedup pass.
  static Graph from_sorted_pairs(std::size_t n,
                                 std::span<const VertexPair> pairs);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex u) const;
  std::size_t degree(Vertex u) const;
  bool has_edge(Vertex u, Vertex v) const;

  /// Edge list with u < v in lexicographic order.
  std::vector<VertexPair> edges() const;

  friend bool operator==(const Graph &a, const Graph &b) = default;

private:
  void check_vertex(Vertex u) const;
  void build(std::size_t n, std::span<const VertexPair> sorted_unique);

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

/**
   m graphs on a shared vertex set, together with the sorted universe of
   pairs that occur in at least one of them.
 */
class LayerSet {
public:
  explicit LayerSet(std::vector<Graph> layers);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_layers() const { return layers_.size(); }
  const Graph &layer(std::size_t i) const { return layers_.at(i); }
  const std::vector<Graph> &layers() const { return layers_; }

  /// Pairs (u, v), u < v, present in some layer; sorted lexicographically.
  const std::vector<VertexPair> &union_edges() const { return union_edges_; }

private:
  std::size_t n_ = 0;
  std::vector<Graph> layers_;
  std::vector<VertexPair> union_edges_;
};

/// Graph whose edge set is the union of all layers.
Graph graph_union(const LayerSet &layers);

/**
   Total assignment of vertices to dense cluster ids 0..k-1, every id used.
 */
class Clustering {
public:
  Clustering() = default;

  /// Accepts arbitrary labels and renumbers them densely in order of first
  /// appearance.
  explicit Clustering(std::span<const std::uint32_t> labels);

  /// Every vertex in its own cluster.
  static Clustering singletons(std::size_t n);
  /// Every vertex in cluster 0.
  static Clustering single_cluster(std::size_t n);

  std::size_t num_vertices() const { return assignment_.size(); }
  std::size_t num_clusters() const { return k_; }
  std::uint32_t operator[](Vertex u) const { return assignment_[u]; }
  std::uint32_t at(Vertex u) const;
  const std::vector<std::uint32_t> &assignment() const { return assignment_; }

  bool same_cluster(Vertex u, Vertex v) const { return at(u) == at(v); }

  friend bool operator==(const Clustering &a, const Clustering &b) = default;

private:
  std::vector<std::uint32_t> assignment_;
  std::size_t k_ = 0;
};

} // namespace lbga
