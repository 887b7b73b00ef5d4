#include "lbga/quality.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lbga {
namespace {

// Above this vertex count the bitset index would cost n^2/8 bytes; fall
// back to sorted-list merges.
constexpr std::size_t kBitsetVertexLimit = 16384;

double log_normalizer(std::size_t n, double log_base) {
  if (n < 2)
    throw std::invalid_argument(
        "neighborhood overlap needs at least 2 vertices");
  if (!(log_base > 1.0))
    throw std::invalid_argument("log base must exceed 1");
  return std::log(static_cast<double>(n)) / std::log(log_base);
}

double overlap_ratio(std::size_t common, double log_n) {
  const auto x = static_cast<double>(common);
  return x / (x + log_n);
}

double jaccard_ratio(std::size_t common, std::size_t du, std::size_t dv) {
  const auto uni = du + dv - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

double dice_ratio(std::size_t common, std::size_t du, std::size_t dv) {
  return du + dv == 0 ? 0.0
                      : 2.0 * static_cast<double>(common) /
                            static_cast<double>(du + dv);
}

double signed_by(const Clustering &c, Vertex u, Vertex v, double value) {
  return c.same_cluster(u, v) ? value : -value;
}

std::optional<BaseMeasure> base_of(QualityKind kind) {
  switch (kind) {
  case QualityKind::NeighborhoodOverlap:
  case QualityKind::ConsistentNO:
    return BaseMeasure::NeighborhoodOverlap;
  case QualityKind::Jaccard:
  case QualityKind::ConsistentJaccard:
    return BaseMeasure::Jaccard;
  case QualityKind::Dice:
  case QualityKind::ConsistentDice:
    return BaseMeasure::Dice;
  case QualityKind::EdgeConsistency:
  case QualityKind::Oracle:
    break;
  }
  return std::nullopt;
}

bool is_consistent(QualityKind kind) {
  return kind == QualityKind::ConsistentNO ||
         kind == QualityKind::ConsistentJaccard ||
         kind == QualityKind::ConsistentDice;
}

const Clustering &require(const Clustering *c, const QualitySpec &spec) {
  if (c == nullptr)
    throw std::invalid_argument("quality measure '" + spec.name() +
                                "' needs a clustering of the candidate graph");
  return *c;
}

} // namespace

bool QualitySpec::needs_clustering() const {
  return kind == QualityKind::EdgeConsistency || is_consistent(kind);
}

bool QualitySpec::needs_graph() const { return base_of(kind).has_value(); }

QualitySpec QualitySpec::from_name(std::string_view name) {
  std::string key;
  for (char ch : name)
    if (ch != '_' && ch != '-')
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  QualitySpec spec;
  if (key == "ec" || key == "edgeconsistency")
    spec.kind = QualityKind::EdgeConsistency;
  else if (key == "no" || key == "neighborhoodoverlap")
    spec.kind = QualityKind::NeighborhoodOverlap;
  else if (key == "consistentno")
    spec.kind = QualityKind::ConsistentNO;
  else if (key == "jaccard")
    spec.kind = QualityKind::Jaccard;
  else if (key == "dice")
    spec.kind = QualityKind::Dice;
  else if (key == "consistentjaccard")
    spec.kind = QualityKind::ConsistentJaccard;
  else if (key == "consistentdice")
    spec.kind = QualityKind::ConsistentDice;
  else if (key == "oracle")
    spec.kind = QualityKind::Oracle;
  else
    throw std::invalid_argument(
        "unknown quality measure '" + std::string(name) +
        "'; expected one of ec, no, consistentno, jaccard, dice, "
        "consistentjaccard, consistentdice, oracle");
  return spec;
}

std::string QualitySpec::name() const {
  switch (kind) {
  case QualityKind::EdgeConsistency: return "ec";
  case QualityKind::NeighborhoodOverlap: return "no";
  case QualityKind::ConsistentNO: return "consistentno";
  case QualityKind::Jaccard: return "jaccard";
  case QualityKind::Dice: return "dice";
  case QualityKind::ConsistentJaccard: return "consistentjaccard";
  case QualityKind::ConsistentDice: return "consistentdice";
  case QualityKind::Oracle: return "oracle";
  }
  return "?";
}

std::size_t common_neighbors(const Graph &g, Vertex u, Vertex v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

double edge_consistency(const Clustering &c, Vertex u, Vertex v) {
  return c.same_cluster(u, v) ? 1.0 : 0.0;
}

double neighborhood_overlap(const Graph &g, Vertex u, Vertex v,
                            double log_base) {
  const double log_n = log_normalizer(g.num_vertices(), log_base);
  return overlap_ratio(common_neighbors(g, u, v), log_n);
}

double jaccard(const Graph &g, Vertex u, Vertex v) {
  return jaccard_ratio(common_neighbors(g, u, v), g.degree(u), g.degree(v));
}

double dice(const Graph &g, Vertex u, Vertex v) {
  return dice_ratio(common_neighbors(g, u, v), g.degree(u), g.degree(v));
}

double base_quality(BaseMeasure base, const Graph &g, Vertex u, Vertex v,
                    double log_base) {
  switch (base) {
  case BaseMeasure::NeighborhoodOverlap:
    return neighborhood_overlap(g, u, v, log_base);
  case BaseMeasure::Jaccard:
    return jaccard(g, u, v);
  case BaseMeasure::Dice:
    return dice(g, u, v);
  }
  return 0.0;
}

double consistent(BaseMeasure base, const Graph &g, const Clustering &c,
                  Vertex u, Vertex v, double log_base) {
  return signed_by(c, u, v, base_quality(base, g, u, v, log_base));
}

double oracle_quality(const Clustering &c, Vertex u, Vertex v) {
  return c.same_cluster(u, v) ? 1.0 : -1.0;
}

double evaluate_quality(const QualitySpec &spec, const Graph &g,
                        const Clustering *c, Vertex u, Vertex v) {
  switch (spec.kind) {
  case QualityKind::EdgeConsistency:
    return edge_consistency(require(c, spec), u, v);
  case QualityKind::Oracle:
    if (!spec.oracle_clustering)
      throw std::invalid_argument("oracle quality needs a target clustering");
    return oracle_quality(*spec.oracle_clustering, u, v);
  default:
    break;
  }
  const auto base = *base_of(spec.kind);
  if (is_consistent(spec.kind))
    return consistent(base, g, require(c, spec), u, v, spec.log_base);
  return base_quality(base, g, u, v, spec.log_base);
}

QualityEvaluator::QualityEvaluator(const QualitySpec &spec, const Graph &g,
                                   const Clustering *c)
    : spec_(spec), graph_(g), clustering_(c) {
  if (spec.needs_clustering())
    require(c, spec);
  if (spec.kind == QualityKind::Oracle && !spec.oracle_clustering)
    throw std::invalid_argument("oracle quality needs a target clustering");
  if (!spec.needs_graph())
    return;
  const auto n = g.num_vertices();
  if (spec.kind == QualityKind::NeighborhoodOverlap ||
      spec.kind == QualityKind::ConsistentNO)
    log_n_ = log_normalizer(n, spec.log_base);
  if (n <= kBitsetVertexLimit) {
    words_ = (n + 63) / 64;
    bits_.assign(n * words_, 0);
    for (Vertex u = 0; u < n; ++u) {
      auto *row = bits_.data() + u * words_;
      for (Vertex w : g.neighbors(u))
        row[w >> 6] |= std::uint64_t{1} << (w & 63);
    }
  }
}

std::size_t QualityEvaluator::common_neighbors(Vertex u, Vertex v) const {
  if (words_ == 0)
    return lbga::common_neighbors(graph_, u, v);
  const auto *a = bits_.data() + u * words_;
  const auto *b = bits_.data() + v * words_;
  std::size_t count = 0;
  for (std::size_t i = 0; i < words_; ++i)
    count += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return count;
}

double QualityEvaluator::base(Vertex u, Vertex v) const {
  const auto common = common_neighbors(u, v);
  switch (*base_of(spec_.kind)) {
  case BaseMeasure::NeighborhoodOverlap:
    return overlap_ratio(common, log_n_);
  case BaseMeasure::Jaccard:
    return jaccard_ratio(common, graph_.degree(u), graph_.degree(v));
  case BaseMeasure::Dice:
    return dice_ratio(common, graph_.degree(u), graph_.degree(v));
  }
  return 0.0;
}

double QualityEvaluator::operator()(Vertex u, Vertex v) const {
  switch (spec_.kind) {
  case QualityKind::EdgeConsistency:
    return edge_consistency(*clustering_, u, v);
  case QualityKind::Oracle:
    return oracle_quality(*spec_.oracle_clustering, u, v);
  default:
    break;
  }
  const double value = base(u, v);
  return is_consistent(spec_.kind) ? signed_by(*clustering_, u, v, value)
                                   : value;
}

} // namespace lbga
