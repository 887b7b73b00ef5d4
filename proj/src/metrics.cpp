#include "lbga/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace lbga {
namespace {

void check_same_size(const Graph &g, const Clustering &c) {
  if (g.num_vertices() != c.num_vertices())
    throw std::invalid_argument(
        "clustering covers " + std::to_string(c.num_vertices()) +
        " vertices but graph has " + std::to_string(g.num_vertices()));
}

double entropy_term(const std::vector<double> &counts, double total) {
  double h = 0.0;
  for (double c : counts)
    if (c > 0)
      h += c * std::log(c / total);
  return h;
}

} // namespace

double nmi(const Clustering &a, const Clustering &b) {
  if (a.num_vertices() != b.num_vertices())
    throw std::invalid_argument("nmi: clusterings cover different vertex counts");
  const auto n = a.num_vertices();
  if (n == 0)
    throw std::invalid_argument("nmi: empty clusterings");
  if (a == b)
    return 1.0;

  std::vector<double> row(a.num_clusters(), 0.0), col(b.num_clusters(), 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  for (Vertex v = 0; v < n; ++v) {
    row[a[v]] += 1;
    col[b[v]] += 1;
    joint[{a[v], b[v]}] += 1;
  }
  const auto total = static_cast<double>(n);
  const double denom = entropy_term(row, total) + entropy_term(col, total);
  if (denom == 0.0)
    return 0.0;
  double mutual = 0.0;
  for (const auto &[key, nij] : joint)
    mutual += nij * std::log(nij * total / (row[key.first] * col[key.second]));
  return std::clamp(-2.0 * mutual / denom, 0.0, 1.0);
}

double modularity(const Graph &g, const Clustering &c) {
  check_same_size(g, c);
  if (g.num_edges() == 0)
    throw std::invalid_argument("modularity is undefined for a graph without edges");
  const auto m = static_cast<double>(g.num_edges());
  std::vector<double> inside(c.num_clusters(), 0.0), volume(c.num_clusters(), 0.0);
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    volume[c[u]] += static_cast<double>(g.degree(u));
    for (Vertex v : g.neighbors(u))
      if (u < v && c[u] == c[v])
        inside[c[u]] += 1;
  }
  double q = 0.0;
  for (std::size_t k = 0; k < inside.size(); ++k) {
    const double a = volume[k] / (2 * m);
    q += inside[k] / m - a * a;
  }
  return q;
}

double conductance_sum(const Graph &g, const Clustering &c) {
  check_same_size(g, c);
  std::vector<double> cut(c.num_clusters(), 0.0), volume(c.num_clusters(), 0.0);
  double total_volume = 0.0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const auto d = static_cast<double>(g.degree(u));
    volume[c[u]] += d;
    total_volume += d;
    for (Vertex v : g.neighbors(u))
      if (c[u] != c[v])
        cut[c[u]] += 1;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < cut.size(); ++k) {
    const double smaller = std::min(volume[k], total_volume - volume[k]);
    if (smaller > 0)
      sum += cut[k] / smaller;
  }
  return sum;
}

double sparsity(const Graph &result, const Graph &union_graph) {
  if (result.num_vertices() != union_graph.num_vertices())
    throw std::invalid_argument("sparsity: graphs on different vertex sets");
  for (Vertex u = 0; u < result.num_vertices(); ++u)
    for (Vertex v : result.neighbors(u))
      if (u < v && !union_graph.has_edge(u, v))
        throw std::logic_error("learned graph contains edge (" +
                               std::to_string(u) + "," + std::to_string(v) +
                               ") absent from every input layer");
  if (union_graph.num_edges() == 0)
    return 0.0;
  return static_cast<double>(result.num_edges()) /
         static_cast<double>(union_graph.num_edges());
}

namespace {

MetricReport score(const Graph &g, const Clustering &c, const Clustering *truth) {
  MetricReport r;
  if (g.num_edges() > 0)
    r.modularity = modularity(g, c);
  r.conductance_sum = conductance_sum(g, c);
  if (truth)
    r.nmi = nmi(c, *truth);
  r.edges = g.num_edges();
  r.clusters = c.num_clusters();
  return r;
}

ClustererSpec scoring_clusterer(const ClustererSpec &spec) {
  if (spec.kind == ClustererKind::Null)
    return ClustererSpec{};
  return spec;
}

} // namespace

MetricReport evaluate_graph(const Graph &learned, const LayerSet &layers,
                            const Clustering *truth,
                            const ClustererSpec &clusterer) {
  auto report = score(learned, cluster(scoring_clusterer(clusterer), learned), truth);
  report.sparsity = sparsity(learned, graph_union(layers));
  return report;
}

MetricReport union_baseline(const LayerSet &layers, const Clustering *truth,
                            const ClustererSpec &clusterer) {
  const Graph u = graph_union(layers);
  const Clustering c = truth ? *truth : cluster(scoring_clusterer(clusterer), u);
  // Scored against the truth itself, so NMI carries no information here.
  auto report = score(u, c, nullptr);
  report.sparsity = 1.0;
  const auto m = layers.num_layers();
  report.layer_weights.assign(m, 1.0 / static_cast<double>(m));
  return report;
}

} // namespace lbga
