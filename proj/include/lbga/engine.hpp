#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lbga/clustering.hpp"
#include "lbga/graph.hpp"
#include "lbga/quality.hpp"

namespace lbga {

struct EngineConfig {
  double epsilon = 0.2;   // learning rate for layers containing the pair
  double nu = 0.2;        // learning rate for layers missing the pair
  double delta = 0.05;    // fixing threshold
  std::size_t max_rounds = 1000;
  std::uint64_t seed = 1;
  QualitySpec quality;
  ClustererSpec clusterer;

  /// Throws std::invalid_argument on out-of-range parameters or an
  /// incompatible quality/clusterer combination.
  void validate() const;
};

enum class PairStatus : std::uint8_t { Active, FixedIn, FixedOut };

/**
   Per-pair multiplicative weights over the layers, for every pair in the
   union of the layers.

   Layer membership is a bitmask, so at most 64 layers are supported.
 */
class WeightTable {
public:
  static constexpr std::size_t kMaxLayers = 64;

  explicit WeightTable(const LayerSet &layers);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_pairs() const { return pairs_.size(); }
  std::size_t num_layers() const { return m_; }
  std::size_t num_active() const { return active_; }

  const VertexPair &pair(std::size_t i) const { return pairs_[i]; }
  const std::vector<VertexPair> &pairs() const { return pairs_; }
  std::span<const double> weights(std::size_t i) const {
    return {weights_.data() + i * m_, m_};
  }
  bool member(std::size_t i, std::size_t layer) const {
    return (membership_[i] >> layer) & 1u;
  }
  std::uint64_t membership(std::size_t i) const { return membership_[i]; }
  PairStatus status(std::size_t i) const { return status_[i]; }

  /// Weight share of the layers containing the pair.
  double probability(std::size_t i) const;

  /// w_i <- w_i (1 + epsilon q) for member layers, w_i (1 - nu q) otherwise.
  void update(std::size_t i, double q, double epsilon, double nu);

  /// Applies the fixing rule to an active pair: p > 1 - delta fixes it in,
  /// p < delta fixes it out. Returns the resulting status. Fixed pairs are
  /// left untouched.
  PairStatus fix(std::size_t i, double delta);

  /// Mean over all pairs of w_i / sum_j w_j, per layer.
  std::vector<double> mean_normalized_weights() const;

  friend bool operator==(const WeightTable &, const WeightTable &) = default;

private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t active_ = 0;
  std::vector<VertexPair> pairs_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> membership_;
  std::vector<PairStatus> status_;
};

struct RoundTrace {
  std::size_t round = 0;
  std::optional<double> nmi;        // A(G_t) vs truth, when truth is known
  std::optional<double> modularity; // G_t under A(G_t)
  std::size_t edges = 0;            // |E(G_t)|
  std::size_t active_pairs = 0;     // |U| after the round
  std::vector<double> layer_weights;

  friend bool operator==(const RoundTrace &, const RoundTrace &) = default;
};

struct LbgaResult {
  Graph graph;        // the last sampled candidate
  WeightTable weights;
  std::vector<RoundTrace> trace;
  std::size_t rounds_used = 0;
  bool converged = false;
};

/// Candidate graph for `round`: every fixed-in pair plus every active pair
/// whose coin of bias p lands heads. The coin for pair i in round r depends
/// only on (seed, r, i).
Graph sample_candidate(const WeightTable &table, std::uint64_t seed,
                       std::size_t round);

/// Reward for a pair: the configured quality of (u, v) on the candidate
/// graph under its clustering (null when the clusterer is Null).
double reward(const QualitySpec &quality, const Graph &candidate,
              const Clustering *clustering, Vertex u, Vertex v);

void update_pair(WeightTable &table, std::size_t i, double q, double epsilon,
                 double nu);

struct FixResult {
  std::vector<std::size_t> fixed_in;
  std::vector<std::size_t> fixed_out;
};

/// Applies the fixing rule to every active pair.
FixResult fix_pairs(WeightTable &table, double delta);

/// Called after every round with the round index (1-based) and the table.
using RoundObserver = std::function<void(std::size_t, const WeightTable &)>;

LbgaResult run(const LayerSet &layers, const EngineConfig &config,
               const Clustering *truth = nullptr,
               const RoundObserver &observer = {});

/// Smallest T with n_bad / (1 + epsilon)^T <= delta; 0 when n_bad = 0.
std::size_t convergence_bound(double delta, double epsilon, std::size_t n_bad);

/// Bad-layer weight share after t rounds under the oracle quality.
double oracle_bad_probability(std::size_t n_bad, std::size_t n_good,
                              double epsilon, std::size_t t);

} // namespace lbga
