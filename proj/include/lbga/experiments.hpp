#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lbga/engine.hpp"
#include "lbga/generators.hpp"
#include "lbga/io.hpp"
#include "lbga/metrics.hpp"

namespace lbga {

/// A synthetic preset or a manifest on disk.
using DatasetSource = std::variant<DatasetSpec, std::filesystem::path>;

std::string dataset_name(const DatasetSource &source);

struct ExperimentSpec {
  DatasetSource dataset;
  EngineConfig engine;
  std::size_t repetitions = 5;
  /// Repetition r uses seed + r for data generation and the engine.
  std::uint64_t seed = 1;
  /// Trace, graph and report files are written here when set.
  std::optional<std::filesystem::path> out_dir;
  /// Worker threads for independent seeds; 0 means one per hardware thread.
  std::size_t jobs = 0;
  /// Replaces every manifest layer's binarization threshold when set.
  std::optional<double> alpha;

  void validate() const;
};

/// Writes layer_<i>.txt, truth.txt and manifest.json for a synthetic preset.
std::filesystem::path generate_dataset(const DatasetSpec &spec,
                                       std::uint64_t seed,
                                       const std::filesystem::path &out_dir);

struct SeedOutcome {
  std::uint64_t seed = 0;
  MetricReport learned;
  MetricReport union_graph;
  std::size_t rounds = 0;
  bool converged = false;
  std::size_t union_edges = 0;
};

struct RunSummary {
  std::vector<SeedOutcome> seeds;
  /// Per-seed rows, then the union baseline and learned medians.
  std::vector<ReportRow> rows;
  MetricReport median_learned;
  MetricReport median_union;
};

RunSummary run_experiment(const ExperimentSpec &spec);

/// Scores an existing graph file against a manifest's layers.
ReportRow evaluate_file(const std::filesystem::path &manifest,
                        const std::filesystem::path &graph,
                        const ClustererSpec &clusterer,
                        std::optional<double> alpha = std::nullopt);

struct SweepPoint {
  double within = 0, across = 0, snr = 0;
  double median_nmi = 0;
  double median_sparsity = 0;
};

struct SweepSpec {
  std::vector<double> within_values{0.3};
  /// Empty means the default grid: across = p * j / 10 for j = 1..10.
  std::vector<double> across_values;
  std::size_t blocks = 4;
  std::size_t block_size = 125;
  EngineConfig engine;
  std::size_t repetitions = 3;
  std::uint64_t seed = 1;
  std::size_t jobs = 0;
};

std::vector<double> default_across_grid(double within);
std::vector<SweepPoint> sweep(const SweepSpec &spec);
std::string format_sweep(const SweepSpec &spec,
                         const std::vector<SweepPoint> &points);

struct BenchPoint {
  std::size_t vertices = 0;
  std::size_t union_edges = 0;
  std::size_t rounds = 0;
  double seconds = 0;
};

struct BenchSpec {
  /// Total vertex counts; each is split into `blocks` equal blocks.
  std::vector<std::size_t> sizes{250, 500, 1000};
  std::size_t blocks = 10;
  double within = 0.3;
  double across = 0.05;
  EngineConfig engine;
  std::uint64_t seed = 1;
};

struct BenchResult {
  std::vector<BenchPoint> points;
  /// Least-squares slope of log(seconds) against log(union edges); absent
  /// with fewer than two sizes.
  std::optional<double> slope;
};

/// Sizes run one after another so timings do not compete for cores.
BenchResult bench(const BenchSpec &spec);
std::string format_bench(const BenchResult &result);

struct ConvergeSpec {
  std::size_t layers = 4;
  std::size_t n_bad = 3;
  double epsilon = 0.2;
  double delta = 0.05;
  std::size_t cluster_size = 4;
  std::size_t clusters = 2;
};

struct ConvergeReport {
  std::size_t bound = 0;           // closed-form round bound
  std::size_t last_fix_round = 0;  // round in which the last pair was fixed
  std::size_t pairs = 0;
  std::size_t wrong_direction = 0; // pairs fixed against the target
  std::size_t unresolved = 0;
  double max_relative_error = 0;   // simulated vs closed-form p_bad
  std::size_t rounds_checked = 0;
  bool passed = false;
};

/**
   Builds an instance where every pair of a planted clustering has exactly
   n_bad disagreeing layers, runs the engine with the oracle quality and the
   null clusterer, and checks the bad-weight trajectory against the closed
   form and the fixing deadline against convergence_bound().
 */
ConvergeReport check_convergence(const ConvergeSpec &spec);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double> &x, const std::vector<double> &y);
/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);
/// Median of a nonempty list.
double median(std::vector<double> values);

} // namespace lbga
