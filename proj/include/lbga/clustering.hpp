#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lbga/graph.hpp"

namespace lbga {

enum class ClustererKind { Walktrap, ConnectedComponents, Null };

/// Which clustering algorithm plays the role of the per-round event.
/// `Null` runs nothing and is only valid with quality measures that ignore
/// the candidate clustering.
struct ClustererSpec {
  ClustererKind kind = ClustererKind::Walktrap;
  int walk_length = 4;

  /// walktrap, components (or cc), null.
  static ClustererSpec from_name(std::string_view name, int walk_length = 4);
  std::string name() const;
};

/// Throws std::logic_error for the Null clusterer.
Clustering cluster(const ClustererSpec &spec, const Graph &g);

/**
   Random-walk agglomerative clustering (Pons & Latapy).

   Walks use P = D^{-1} A. Communities start as singletons; the adjacent pair whose merge least increases the mean squared
   t-step walk distance (Ward criterion) is merged, ties going to the
   lexicographically smallest community-id pair. The dendrogram level with
   the highest modularity of `g` is returned (earliest level on ties).
   Communities in different connected components are never merged.
 */
Clustering walktrap(const Graph &g, int walk_length = 4);

/// Full merge sequence of walktrap, for inspection.
struct WalktrapDendrogram {
  /// Community ids merged at each step. Ids 0..n-1 are the vertices; the
  /// community created by merge i gets id n + i.
  std::vector<std::pair<std::size_t, std::size_t>> merges;
  /// modularity[i] is the modularity after i merges (size merges + 1).
  /// Empty when g has no edges.
  std::vector<double> modularity;
  std::size_t best_level = 0;
};

WalktrapDendrogram walktrap_dendrogram(const Graph &g, int walk_length = 4);

/// Partition after the first `level` merges of `d`.
Clustering cut_dendrogram(const WalktrapDendrogram &d, std::size_t n,
                          std::size_t level);

Clustering connected_components(const Graph &g);

} // namespace lbga
