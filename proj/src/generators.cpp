#include "lbga/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lbga/rng.hpp"

namespace lbga {
namespace {

void check_probability(double p, const char *what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(what) + " probability " +
                                std::to_string(p) + " outside [0,1]");
}

std::vector<std::size_t> vertex_blocks(const std::vector<std::size_t> &sizes) {
  std::vector<std::size_t> block;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    block.insert(block.end(), sizes[b], b);
  return block;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

} // namespace

std::size_t BlockModelSpec::num_vertices() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(),
                         std::size_t{0});
}

void BlockModelSpec::validate() const {
  const auto k = num_blocks();
  if (k == 0)
    throw std::invalid_argument("block model needs at least one block");
  if (probabilities.size() != k * k)
    throw std::invalid_argument("block matrix must be k x k");
  for (auto s : block_sizes)
    if (s == 0)
      throw std::invalid_argument("block sizes must be positive");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      check_probability(probability(i, j), "block");
      if (probability(i, j) != probability(j, i))
        throw std::invalid_argument("block matrix must be symmetric");
    }
}

BlockModelSpec BlockModelSpec::planted(std::vector<std::size_t> block_sizes,
                                       double within, double across) {
  BlockModelSpec spec;
  const auto k = block_sizes.size();
  spec.block_sizes = std::move(block_sizes);
  spec.probabilities.assign(k * k, across);
  for (std::size_t i = 0; i < k; ++i)
    spec.probabilities[i * k + i] = within;
  return spec;
}

Clustering block_labels(const std::vector<std::size_t> &block_sizes) {
  std::vector<std::uint32_t> labels;
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    labels.insert(labels.end(), block_sizes[b], static_cast<std::uint32_t>(b));
  return Clustering(labels);
}

Graph sbm(const BlockModelSpec &spec, std::uint64_t seed) {
  spec.validate();
  const auto n = spec.num_vertices();
  const auto block = vertex_blocks(spec.block_sizes);
  std::mt19937_64 gen(seed);
  std::vector<VertexPair> pairs;
  // Fixed lexicographic enumeration: one draw per pair u < v.
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = spec.probability(block[u], block[v]);
      if (to_unit_double(gen()) < p)
        pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  return Graph::from_sorted_pairs(n, pairs);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p, "edge");
  return sbm(BlockModelSpec::planted({n}, p, p), seed);
}

LayerSet gsbm_layers(const std::vector<std::size_t> &block_sizes,
                     const std::vector<double> &within,
                     const std::vector<double> &across, std::uint64_t seed) {
  if (within.size() != across.size() || within.empty())
    throw std::invalid_argument(
        "within and across lists must be nonempty and of equal length m");
  std::vector<Graph> layers;
  for (std::size_t i = 0; i < within.size(); ++i)
    layers.push_back(sbm(BlockModelSpec::planted(block_sizes, within[i],
                                                 across[i]),
                         derive_seed(seed, i)));
  return LayerSet(std::move(layers));
}

LayerSet lsbm_layers(const std::vector<std::size_t> &block_sizes,
                     const std::vector<double> &within,
                     const std::vector<double> &across, std::uint64_t seed) {
  const auto k = block_sizes.size();
  const auto m = within.size();
  if (m != across.size() || m == 0)
    throw std::invalid_argument(
        "within and across lists must be nonempty and of equal length m");
  if (m < k)
    throw std::invalid_argument("LSBM needs at least one layer per block (m >= k)");
  std::vector<Graph> layers;
  for (std::size_t i = 0; i < m; ++i) {
    BlockModelSpec spec = BlockModelSpec::planted(block_sizes, across[i], across[i]);
    if (i < k) {
      spec.probabilities[i * k + i] = within[i];
    } else if (within[i] != across[i]) {
      throw std::invalid_argument("LSBM layer " + std::to_string(i) +
                                  " beyond the block count must be uniform "
                                  "(within == across)");
    }
    layers.push_back(sbm(spec, derive_seed(seed, i)));
  }
  return LayerSet(std::move(layers));
}

std::size_t DatasetSpec::num_vertices() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(),
                         std::size_t{0});
}

void DatasetSpec::validate() const {
  if (block_sizes.empty())
    throw std::invalid_argument("dataset needs at least one block");
  if (within.empty() || within.size() != across.size())
    throw std::invalid_argument("dataset needs m >= 1 (within, across) pairs");
  for (std::size_t i = 0; i < within.size(); ++i) {
    check_probability(within[i], "within-block");
    check_probability(across[i], "across-block");
    if (family == ModelFamily::ER && within[i] != across[i])
      throw std::invalid_argument("ER layers must have within == across");
  }
  if (family == ModelFamily::LSBM && within.size() < block_sizes.size())
    throw std::invalid_argument("LSBM needs m >= k");
}

SyntheticDataset generate(const DatasetSpec &spec, std::uint64_t seed) {
  spec.validate();
  switch (spec.family) {
  case ModelFamily::LSBM:
    return {lsbm_layers(spec.block_sizes, spec.within, spec.across, seed),
            block_labels(spec.block_sizes)};
  case ModelFamily::GSBM:
  case ModelFamily::ER:
    break;
  }
  return {gsbm_layers(spec.block_sizes, spec.within, spec.across, seed),
          block_labels(spec.block_sizes)};
}

const std::vector<DatasetSpec> &builtin_presets() {
  static const std::vector<DatasetSpec> presets = [] {
    const std::vector<std::size_t> blocks(4, 125);
    using V = std::vector<double>;
    return std::vector<DatasetSpec>{
        {"GSBM-1", ModelFamily::GSBM, blocks, V(4, 0.2), V(4, 0.05)},
        {"GSBM-2", ModelFamily::GSBM, blocks, V(4, 0.3), V(4, 0.05)},
        {"GSBM-3", ModelFamily::GSBM, blocks, {0.3, 0.3, 0.3, 0.3, 0.01},
         {0.05, 0.05, 0.05, 0.05, 0.01}},
        {"GSBM-4", ModelFamily::GSBM, blocks, {0.1625, 0.125, 0.125, 0.0875},
         V(4, 0.05)},
        {"GSBM-5", ModelFamily::GSBM, blocks, {0.15, 0.1, 0.05, 0.05},
         V(4, 0.05)},
        {"LSBM-1", ModelFamily::LSBM, blocks, V(4, 0.2), V(4, 0.05)},
        {"LSBM-2", ModelFamily::LSBM, blocks, V(4, 0.3), V(4, 0.05)},
        {"LSBM-3", ModelFamily::LSBM, blocks, {0.3, 0.3, 0.3, 0.3, 0.01},
         {0.05, 0.05, 0.05, 0.05, 0.01}},
        // No planted structure; the nominal 4 x 125 blocks serve as truth.
        {"ER only", ModelFamily::ER, blocks, V(4, 0.01), V(4, 0.01)},
    };
  }();
  return presets;
}

const DatasetSpec &preset(std::string_view name) {
  const auto key = lower(name);
  std::string known;
  for (const auto &p : builtin_presets()) {
    auto pname = lower(p.name);
    if (pname == key || (pname == "er only" && (key == "er" || key == "er-only")))
      return p;
    known += (known.empty() ? "" : ", ") + p.name;
  }
  throw std::invalid_argument("unknown dataset preset '" + std::string(name) +
                              "'; known presets: " + known);
}

DatasetSpec lsbm_family(std::size_t k, std::size_t block_size, double within,
                        double across) {
  DatasetSpec spec;
  spec.name = "LSBM(k=" + std::to_string(k) + ",n_i=" +
              std::to_string(block_size) + ")";
  spec.family = ModelFamily::LSBM;
  spec.block_sizes.assign(k, block_size);
  spec.within.assign(k, within);
  spec.across.assign(k, across);
  return spec;
}

} // namespace lbga
