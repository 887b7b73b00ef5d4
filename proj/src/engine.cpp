#include "lbga/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lbga/metrics.hpp"
#include "lbga/rng.hpp"

namespace lbga {

void EngineConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  if (!(nu >= 0.0 && nu < 1.0))
    throw std::invalid_argument("nu must lie in [0,1)");
  if (!(delta > 0.0 && delta <= 0.5))
    throw std::invalid_argument("delta must lie in (0,0.5]");
  if (max_rounds == 0)
    throw std::invalid_argument("max_rounds must be positive");
  if (clusterer.kind == ClustererKind::Walktrap && clusterer.walk_length < 1)
    throw std::invalid_argument("walk length must be at least 1");
  if (clusterer.kind == ClustererKind::Null && quality.needs_clustering())
    throw std::invalid_argument("quality '" + quality.name() +
                                "' needs a clustering; the null clusterer "
                                "only pairs with the oracle quality");
  if (quality.kind == QualityKind::Oracle && !quality.oracle_clustering)
    throw std::invalid_argument("oracle quality needs a target clustering");
}

WeightTable::WeightTable(const LayerSet &layers)
    : n_(layers.num_vertices()), m_(layers.num_layers()),
      pairs_(layers.union_edges()) {
  if (m_ > kMaxLayers)
    throw std::invalid_argument("at most " + std::to_string(kMaxLayers) +
                                " layers are supported");
  weights_.assign(pairs_.size() * m_, 1.0);
  membership_.assign(pairs_.size(), 0);
  status_.assign(pairs_.size(), PairStatus::Active);
  active_ = pairs_.size();
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    for (std::size_t layer = 0; layer < m_; ++layer)
      if (layers.layer(layer).has_edge(pairs_[i].first, pairs_[i].second))
        membership_[i] |= std::uint64_t{1} << layer;
}

double WeightTable::probability(std::size_t i) const {
  const double *w = weights_.data() + i * m_;
  double member_sum = 0.0, total = 0.0;
  for (std::size_t layer = 0; layer < m_; ++layer) {
    total += w[layer];
    if (member(i, layer))
      member_sum += w[layer];
  }
  return member_sum / total;
}

void WeightTable::update(std::size_t i, double q, double epsilon, double nu) {
  double *w = weights_.data() + i * m_;
  const double grow = 1.0 + epsilon * q;
  const double shrink = 1.0 - nu * q;
  for (std::size_t layer = 0; layer < m_; ++layer)
    w[layer] *= member(i, layer) ? grow : shrink;
}

PairStatus WeightTable::fix(std::size_t i, double delta) {
  if (status_[i] != PairStatus::Active)
    return status_[i];
  const double p = probability(i);
  if (p > 1.0 - delta)
    status_[i] = PairStatus::FixedIn;
  else if (p < delta)
    status_[i] = PairStatus::FixedOut;
  if (status_[i] != PairStatus::Active)
    --active_;
  return status_[i];
}

std::vector<double> WeightTable::mean_normalized_weights() const {
  std::vector<double> mean(m_, 0.0);
  if (pairs_.empty())
    return mean;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const double *w = weights_.data() + i * m_;
    double total = 0.0;
    for (std::size_t layer = 0; layer < m_; ++layer)
      total += w[layer];
    for (std::size_t layer = 0; layer < m_; ++layer)
      mean[layer] += w[layer] / total;
  }
  for (auto &x : mean)
    x /= static_cast<double>(pairs_.size());
  return mean;
}

Graph sample_candidate(const WeightTable &table, std::uint64_t seed,
                       std::size_t round) {
  std::vector<VertexPair> chosen;
  chosen.reserve(table.num_pairs());
  for (std::size_t i = 0; i < table.num_pairs(); ++i) {
    switch (table.status(i)) {
    case PairStatus::FixedIn:
      chosen.push_back(table.pair(i));
      break;
    case PairStatus::Active:
      if (counter_uniform(seed, round, i) < table.probability(i))
        chosen.push_back(table.pair(i));
      break;
    case PairStatus::FixedOut:
      break;
    }
  }
  return Graph::from_sorted_pairs(table.num_vertices(), chosen);
}

double reward(const QualitySpec &quality, const Graph &candidate,
              const Clustering *clustering, Vertex u, Vertex v) {
  return evaluate_quality(quality, candidate, clustering, u, v);
}

void update_pair(WeightTable &table, std::size_t i, double q, double epsilon,
                 double nu) {
  table.update(i, q, epsilon, nu);
}

FixResult fix_pairs(WeightTable &table, double delta) {
  FixResult out;
  for (std::size_t i = 0; i < table.num_pairs(); ++i) {
    if (table.status(i) != PairStatus::Active)
      continue;
    switch (table.fix(i, delta)) {
    case PairStatus::FixedIn: out.fixed_in.push_back(i); break;
    case PairStatus::FixedOut: out.fixed_out.push_back(i); break;
    case PairStatus::Active: break;
    }
  }
  return out;
}

LbgaResult run(const LayerSet &layers, const EngineConfig &config,
               const Clustering *truth, const RoundObserver &observer) {
  config.validate();
  if (truth && truth->num_vertices() != layers.num_vertices())
    throw std::invalid_argument("truth clustering covers the wrong vertex count");
  if (config.quality.oracle_clustering &&
      config.quality.oracle_clustering->num_vertices() != layers.num_vertices())
    throw std::invalid_argument("oracle clustering covers the wrong vertex count");

  LbgaResult result{Graph(layers.num_vertices()), WeightTable(layers), {}, 0, false};
  WeightTable &table = result.weights;
  const bool clusters = config.clusterer.kind != ClustererKind::Null;

  std::vector<std::size_t> active;
  active.reserve(table.num_pairs());
  for (std::size_t i = 0; i < table.num_pairs(); ++i)
    active.push_back(i);

  for (std::size_t round = 1;
       !active.empty() && round <= config.max_rounds; ++round) {
    Graph candidate = sample_candidate(table, config.seed, round);

    std::optional<Clustering> clustering;
    if (clusters)
      clustering = cluster(config.clusterer, candidate);
    const Clustering *c = clustering ? &*clustering : nullptr;

    // Pairs are independent within a round: each reads only the candidate
    // and its clustering, and writes only its own weights and status.
    const QualityEvaluator quality(config.quality, candidate, c);
    std::size_t kept = 0;
    for (std::size_t i : active) {
      const auto [u, v] = table.pair(i);
      table.update(i, quality(u, v), config.epsilon, config.nu);
      if (table.fix(i, config.delta) == PairStatus::Active)
        active[kept++] = i;
    }
    active.resize(kept);

    RoundTrace trace;
    trace.round = round;
    trace.edges = candidate.num_edges();
    trace.active_pairs = active.size();
    if (c) {
      if (truth)
        trace.nmi = nmi(*c, *truth);
      if (candidate.num_edges() > 0)
        trace.modularity = modularity(candidate, *c);
    }
    trace.layer_weights = table.mean_normalized_weights();
    result.trace.push_back(std::move(trace));
    result.rounds_used = round;
    result.graph = std::move(candidate);

    if (observer)
      observer(round, table);
  }
  result.converged = active.empty();
  return result;
}

std::size_t convergence_bound(double delta, double epsilon, std::size_t n_bad) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0,1)");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");
  if (n_bad == 0)
    return 0;
  const double exact = (std::log(1.0 / delta) + std::log(static_cast<double>(n_bad))) /
                       std::log1p(epsilon);
  auto t = static_cast<std::size_t>(std::max(0.0, std::ceil(exact)));
  // Guard the ceiling against rounding on either side of an integer.
  auto holds = [&](std::size_t T) {
    return static_cast<double>(n_bad) / std::pow(1.0 + epsilon, static_cast<double>(T)) <= delta;
  };
  while (t > 0 && holds(t - 1))
    --t;
  while (!holds(t))
    ++t;
  return t;
}

double oracle_bad_probability(std::size_t n_bad, std::size_t n_good,
                              double epsilon, std::size_t t) {
  const double bad = static_cast<double>(n_bad) *
                     std::pow(1.0 - epsilon, static_cast<double>(t));
  const double good = static_cast<double>(n_good) *
                      std::pow(1.0 + epsilon, static_cast<double>(t));
  return bad / (bad + good);
}

} // namespace lbga
