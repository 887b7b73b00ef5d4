#pragma once

#include <optional>
#include <vector>

#include "lbga/clustering.hpp"
#include "lbga/graph.hpp"

namespace lbga {

/// Normalized mutual information with the Danon et al. normalization
/// -2 I(a;b) / (H(a) + H(b)). Two identical single-cluster partitions score
/// 1; a single-cluster partition against anything else scores 0.
double nmi(const Clustering &a, const Clustering &b);

/// Newman modularity sum_c (e_cc - a_c^2). Throws for a graph with no edges.
double modularity(const Graph &g, const Clustering &c);

/// Sum over clusters S of cut(S) / min(vol(S), vol(V \ S)); a cluster whose
/// smaller side has zero volume contributes 0.
double conductance_sum(const Graph &g, const Clustering &c);

/// |E(result)| / |E(union)|. Throws std::logic_error when result has an edge
/// outside `union_graph`.
double sparsity(const Graph &result, const Graph &union_graph);

struct MetricReport {
  std::optional<double> modularity;
  double conductance_sum = 0.0;
  std::optional<double> nmi;
  double sparsity = 1.0;
  std::vector<double> layer_weights;
  std::size_t edges = 0;
  std::size_t clusters = 0;
};

/**
   Score a learned graph: cluster it with `clusterer` and report modularity
   and conductance under that clustering, NMI against `truth` when given,
   and sparsity relative to the union of `layers`.
 */
MetricReport evaluate_graph(const Graph &learned, const LayerSet &layers,
                            const Clustering *truth,
                            const ClustererSpec &clusterer);

/// The union of the layers scored under `truth` when available, otherwise
/// under the clusterer's output on the union.
MetricReport union_baseline(const LayerSet &layers, const Clustering *truth,
                            const ClustererSpec &clusterer);

} // namespace lbga
