#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lbga/graph.hpp"

namespace lbga {

/// Stochastic block model parameters: block sizes and a symmetric k x k
/// matrix of edge probabilities (row-major).
struct BlockModelSpec {
  std::vector<std::size_t> block_sizes;
  std::vector<double> probabilities;

  std::size_t num_blocks() const { return block_sizes.size(); }
  std::size_t num_vertices() const;
  double probability(std::size_t i, std::size_t j) const {
    return probabilities[i * num_blocks() + j];
  }

  /// Throws std::invalid_argument on a malformed spec.
  void validate() const;

  /// Diagonal `within`, everything else `across`.
  static BlockModelSpec planted(std::vector<std::size_t> block_sizes,
                                double within, double across);
};

/// Block labels for contiguous blocks: vertices 0..n_1-1 are block 0, and so on.
Clustering block_labels(const std::vector<std::size_t> &block_sizes);

Graph sbm(const BlockModelSpec &spec, std::uint64_t seed);
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// m layers; layer i uses `within[i]` on the diagonal and `across[i]` off it.
LayerSet gsbm_layers(const std::vector<std::size_t> &block_sizes,
                     const std::vector<double> &within,
                     const std::vector<double> &across, std::uint64_t seed);

/// Layer i < k has `within[i]` only on block (i, i) and `across[i]`
/// everywhere else. Layers i >= k are uniform with probability across[i]
/// (within[i] must equal across[i] for those).
LayerSet lsbm_layers(const std::vector<std::size_t> &block_sizes,
                     const std::vector<double> &within,
                     const std::vector<double> &across, std::uint64_t seed);

enum class ModelFamily { GSBM, LSBM, ER };

/// A reproducible synthetic dataset description.
struct DatasetSpec {
  std::string name;
  ModelFamily family = ModelFamily::GSBM;
  std::vector<std::size_t> block_sizes;
  std::vector<double> within; // one per layer
  std::vector<double> across; // one per layer

  std::size_t num_layers() const { return within.size(); }
  std::size_t num_vertices() const;
  void validate() const;
};

struct SyntheticDataset {
  LayerSet layers;
  Clustering truth;
};

SyntheticDataset generate(const DatasetSpec &spec, std::uint64_t seed);

/// Table of named datasets: GSBM-1..5, LSBM-1..3 and "ER only".
const std::vector<DatasetSpec> &builtin_presets();
/// Lookup by name (case-insensitive). Throws std::invalid_argument listing
/// the known names when absent.
const DatasetSpec &preset(std::string_view name);

/// LSBM with k = m equal blocks of `block_size` and common (within, across).
DatasetSpec lsbm_family(std::size_t k, std::size_t block_size, double within,
                        double across);

} // namespace lbga
