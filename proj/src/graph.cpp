#include "lbga/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace lbga {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph::Graph(std::size_t n, std::span<const VertexPair> edges) {
  std::vector<VertexPair> pairs;
  pairs.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw std::out_of_range("edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") outside vertex range " +
                              std::to_string(n));
    if (u == v)
      continue;
    pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  build(n, pairs);
}

Graph Graph::from_sorted_pairs(std::size_t n,
                               std::span<const VertexPair> pairs) {
  Graph g;
  g.build(n, pairs);
  return g;
}

void Graph::build(std::size_t n, std::span<const VertexPair> sorted_unique) {
  offsets_.assign(n + 1, 0);
  for (auto [u, v] : sorted_unique) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i)
    offsets_[i + 1] += offsets_[i];
  targets_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Lexicographic pair order yields sorted lists: for a fixed vertex x, the
  // neighbors w < x arrive (as pair (w, x)) before any pair (x, w'), and each
  // group arrives in ascending order.
  for (auto [u, v] : sorted_unique) {
    targets_[fill[u]++] = v;
    targets_[fill[v]++] = u;
  }
}

void Graph::check_vertex(Vertex u) const {
  if (u >= num_vertices())
    throw std::out_of_range("vertex " + std::to_string(u) +
                            " outside vertex range " +
                            std::to_string(num_vertices()));
}

std::span<const Vertex> Graph::neighbors(Vertex u) const {
  check_vertex(u);
  return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::size_t Graph::degree(Vertex u) const {
  check_vertex(u);
  return offsets_[u + 1] - offsets_[u];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check_vertex(v);
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<VertexPair> Graph::edges() const {
  std::vector<VertexPair> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v)
        out.emplace_back(u, v);
  return out;
}

LayerSet::LayerSet(std::vector<Graph> layers) : layers_(std::move(layers)) {
  if (layers_.empty())
    throw std::invalid_argument("LayerSet needs at least one layer");
  n_ = layers_.front().num_vertices();
  for (std::size_t i = 1; i < layers_.size(); ++i)
    if (layers_[i].num_vertices() != n_)
      throw std::invalid_argument(
          "layer " + std::to_string(i) + " has " +
          std::to_string(layers_[i].num_vertices()) + " vertices, expected " +
          std::to_string(n_));

  for (const auto &g : layers_) {
    auto e = g.edges();
    std::vector<VertexPair> merged;
    merged.reserve(union_edges_.size() + e.size());
    std::set_union(union_edges_.begin(), union_edges_.end(), e.begin(), e.end(),
                   std::back_inserter(merged));
    union_edges_ = std::move(merged);
  }
}

Graph graph_union(const LayerSet &layers) {
  return Graph::from_sorted_pairs(layers.num_vertices(), layers.union_edges());
}

Clustering::Clustering(std::span<const std::uint32_t> labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  assignment_.reserve(labels.size());
  for (auto label : labels) {
    auto [it, inserted] =
        remap.try_emplace(label, static_cast<std::uint32_t>(remap.size()));
    assignment_.push_back(it->second);
  }
  k_ = remap.size();
}

Clustering Clustering::singletons(std::size_t n) {
  std::vector<std::uint32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i)
    labels[i] = static_cast<std::uint32_t>(i);
  return Clustering(labels);
}

Clustering Clustering::single_cluster(std::size_t n) {
  std::vector<std::uint32_t> labels(n, 0);
  return Clustering(labels);
}

std::uint32_t Clustering::at(Vertex u) const {
  if (u >= assignment_.size())
    throw std::out_of_range("vertex " + std::to_string(u) +
                            " not assigned by clustering of " +
                            std::to_string(assignment_.size()) + " vertices");
  return assignment_[u];
}

} // namespace lbga
