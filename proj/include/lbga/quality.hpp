#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lbga/graph.hpp"

namespace lbga {

// Local edge-quality measures. Base measures are [0,1]-valued; the
// "consistent" variants sign the base value by cluster agreement and are
// [-1,1]-valued; the oracle is {-1,1}-valued.

enum class QualityKind {
  EdgeConsistency,
  NeighborhoodOverlap,
  ConsistentNO,
  Jaccard,
  Dice,
  ConsistentJaccard,
  ConsistentDice,
  Oracle,
};

enum class BaseMeasure { NeighborhoodOverlap, Jaccard, Dice };

struct QualitySpec {
  QualityKind kind = QualityKind::ConsistentNO;
  /// Ground-truth clustering; required for (and only used by) Oracle.
  std::optional<Clustering> oracle_clustering;
  /// Base of the logarithm in the overlap normalizer log|V|.
  double log_base = std::numbers::e;

  /// True when the measure reads the round's clustering A(G_t).
  bool needs_clustering() const;
  /// True when the measure reads neighborhoods of the candidate graph.
  bool needs_graph() const;

  /// Parses ec, no, consistentno, jaccard, dice, consistentjaccard,
  /// consistentdice, oracle (case-insensitive).
  static QualitySpec from_name(std::string_view name);
  std::string name() const;
};

std::size_t common_neighbors(const Graph &g, Vertex u, Vertex v);

/// 1 when u and v share a cluster, else 0.
double edge_consistency(const Clustering &c, Vertex u, Vertex v);

/// |N(u) ∩ N(v)| / (|N(u) ∩ N(v)| + log|V|). Throws for |V| < 2.
double neighborhood_overlap(const Graph &g, Vertex u, Vertex v,
                            double log_base = std::numbers::e);

/// Both are 0 when N(u) and N(v) are empty.
double jaccard(const Graph &g, Vertex u, Vertex v);
double dice(const Graph &g, Vertex u, Vertex v);

double base_quality(BaseMeasure base, const Graph &g, Vertex u, Vertex v,
                    double log_base = std::numbers::e);

/// +base within a cluster, -base across clusters.
double consistent(BaseMeasure base, const Graph &g, const Clustering &c,
                  Vertex u, Vertex v, double log_base = std::numbers::e);

/// q_c(u,v): 1 if c(u) = c(v), -1 otherwise.
double oracle_quality(const Clustering &c, Vertex u, Vertex v);

/// Dispatch on `spec`. `c` may be null only when the spec ignores clusterings.
double evaluate_quality(const QualitySpec &spec, const Graph &g,
                        const Clustering *c, Vertex u, Vertex v);

/**
   Per-round evaluator used by the engine. Builds a bitset neighborhood index
   of the candidate graph once so that overlap counts cost O(n / 64) per pair.
   Produces the same values as evaluate_quality().
 */
class QualityEvaluator {
public:
  QualityEvaluator(const QualitySpec &spec, const Graph &g,
                   const Clustering *c);

  double operator()(Vertex u, Vertex v) const;
  std::size_t common_neighbors(Vertex u, Vertex v) const;

private:
  double base(Vertex u, Vertex v) const;

  const QualitySpec &spec_;
  const Graph &graph_;
  const Clustering *clustering_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  double log_n_ = 0.0;
};

} // namespace lbga
