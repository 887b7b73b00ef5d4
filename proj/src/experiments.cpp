#include "lbga/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lbga {
namespace fs = std::filesystem;

namespace {

struct PreparedData {
  LayerSet layers;
  std::optional<Clustering> truth;
  std::optional<LabelMap> labels;
};

LoadedDataset load_with_alpha(const fs::path &path, std::optional<double> alpha) {
  auto manifest = LayerManifest::read(path);
  if (alpha)
    for (auto &layer : manifest.layers)
      layer.alpha = alpha;
  return load_layers(manifest);
}

PreparedData prepare(const DatasetSource &source, std::uint64_t seed,
                     std::optional<double> alpha) {
  if (const auto *spec = std::get_if<DatasetSpec>(&source)) {
    auto data = generate(*spec, seed);
    return {std::move(data.layers), std::move(data.truth), std::nullopt};
  }
  auto loaded = load_with_alpha(std::get<fs::path>(source), alpha);
  return {std::move(loaded.layers), std::move(loaded.truth),
          std::move(loaded.labels)};
}

EngineConfig with_truth(EngineConfig config, const std::optional<Clustering> &truth) {
  if (config.quality.kind == QualityKind::Oracle) {
    if (!truth)
      throw std::invalid_argument("the oracle quality needs a ground-truth clustering");
    config.quality.oracle_clustering = *truth;
  }
  return config;
}

ClustererSpec scoring(const ClustererSpec &spec) {
  return spec.kind == ClustererKind::Null ? ClustererSpec{} : spec;
}

std::optional<double> median_of(const std::vector<std::optional<double>> &xs) {
  std::vector<double> present;
  for (const auto &x : xs)
    if (x)
      present.push_back(*x);
  if (present.empty())
    return std::nullopt;
  return median(present);
}

MetricReport median_report(const std::vector<MetricReport> &reports) {
  MetricReport out;
  if (reports.empty())
    return out;
  std::vector<std::optional<double>> mod, nmis;
  std::vector<double> cond, spars, edges, clusters;
  for (const auto &r : reports) {
    mod.push_back(r.modularity);
    nmis.push_back(r.nmi);
    cond.push_back(r.conductance_sum);
    spars.push_back(r.sparsity);
    edges.push_back(static_cast<double>(r.edges));
    clusters.push_back(static_cast<double>(r.clusters));
  }
  out.modularity = median_of(mod);
  out.nmi = median_of(nmis);
  out.conductance_sum = median(cond);
  out.sparsity = median(spars);
  out.edges = static_cast<std::size_t>(median(edges));
  out.clusters = static_cast<std::size_t>(median(clusters));
  const auto m = reports.front().layer_weights.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> w;
    for (const auto &r : reports)
      w.push_back(r.layer_weights.at(i));
    out.layer_weights.push_back(median(w));
  }
  return out;
}

std::vector<double> ranks(const std::vector<double> &x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]])
      ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t)
      r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

// Runs task(0..count-1) on up to `jobs` threads; the first exception wins.
template <class Task>
void parallel_for(std::size_t count, std::size_t jobs, Task task) {
  if (jobs == 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto &t : workers)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

double pearson(const std::vector<double> &x, const std::vector<double> &y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0)
    return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

} // namespace

std::string dataset_name(const DatasetSource &source) {
  if (const auto *spec = std::get_if<DatasetSpec>(&source))
    return spec->name;
  return std::get<fs::path>(source).stem().string();
}

void ExperimentSpec::validate() const {
  if (repetitions == 0)
    throw std::invalid_argument("repetitions must be at least 1");
  if (const auto *spec = std::get_if<DatasetSpec>(&dataset))
    spec->validate();
  engine.validate();
}

fs::path generate_dataset(const DatasetSpec &spec, std::uint64_t seed,
                          const fs::path &out_dir) {
  const auto data = generate(spec, seed);
  LayerManifest manifest;
  manifest.n = data.layers.num_vertices();
  for (std::size_t i = 0; i < data.layers.num_layers(); ++i) {
    const std::string name = "layer_" + std::to_string(i);
    save_graph(data.layers.layer(i), nullptr, out_dir / (name + ".txt"));
    manifest.layers.push_back({name, name + ".txt", std::nullopt});
  }
  save_truth(data.truth, nullptr, out_dir / "truth.txt");
  manifest.truth = "truth.txt";
  const auto path = out_dir / "manifest.json";
  manifest.write(path);
  return path;
}

RunSummary run_experiment(const ExperimentSpec &spec) {
  {
    // Oracle configs receive their clustering per repetition below.
    ExperimentSpec check = spec;
    if (check.engine.quality.kind == QualityKind::Oracle &&
        !check.engine.quality.oracle_clustering)
      check.engine.quality.oracle_clustering = Clustering();
    check.validate();
  }
  RunSummary summary;
  const auto name = dataset_name(spec.dataset);
  const auto method = spec.engine.quality.name();
  std::vector<MetricReport> learned, unions;

  std::vector<SeedOutcome> outcomes(spec.repetitions);
  parallel_for(spec.repetitions, spec.jobs, [&](std::size_t r) {
    const std::uint64_t seed = spec.seed + r;
    auto data = prepare(spec.dataset, seed, spec.alpha);
    EngineConfig config = with_truth(spec.engine, data.truth);
    config.seed = seed;
    const Clustering *truth = data.truth ? &*data.truth : nullptr;

    auto result = run(data.layers, config, truth);

    SeedOutcome &outcome = outcomes[r];
    outcome.seed = seed;
    outcome.learned = evaluate_graph(result.graph, data.layers, truth, config.clusterer);
    outcome.learned.layer_weights = result.weights.mean_normalized_weights();
    outcome.union_graph = union_baseline(data.layers, truth, config.clusterer);
    outcome.rounds = result.rounds_used;
    outcome.converged = result.converged;
    outcome.union_edges = data.layers.union_edges().size();
    if (spec.out_dir) {
      const auto tag = "seed" + std::to_string(seed);
      save_trace(result.trace, *spec.out_dir / ("trace_" + tag + ".csv"));
      save_graph(result.graph, data.labels ? &*data.labels : nullptr,
                 *spec.out_dir / ("graph_" + tag + ".txt"));
    }
  });

  for (auto &outcome : outcomes) {
    const auto seed = std::to_string(outcome.seed);
    summary.rows.push_back({name, method, seed, outcome.learned, outcome.rounds,
                            outcome.converged});
    summary.rows.push_back({name, "union", seed, outcome.union_graph,
                            std::nullopt, std::nullopt});
    learned.push_back(outcome.learned);
    unions.push_back(outcome.union_graph);
  }
  summary.seeds = std::move(outcomes);

  summary.median_learned = median_report(learned);
  summary.median_union = median_report(unions);
  summary.rows.push_back({name, "union", "median", summary.median_union,
                          std::nullopt, std::nullopt});
  std::vector<double> rounds;
  for (const auto &s : summary.seeds)
    rounds.push_back(static_cast<double>(s.rounds));
  const bool all_converged =
      std::all_of(summary.seeds.begin(), summary.seeds.end(),
                  [](const SeedOutcome &s) { return s.converged; });
  summary.rows.push_back({name, method, "median", summary.median_learned,
                          static_cast<std::size_t>(median(rounds)), all_converged});
  if (spec.out_dir)
    save_report(summary.rows, *spec.out_dir / "report.csv");
  return summary;
}

ReportRow evaluate_file(const fs::path &manifest, const fs::path &graph,
                        const ClustererSpec &clusterer,
                        std::optional<double> alpha) {
  auto data = load_with_alpha(manifest, alpha);
  const Graph g = load_graph(graph, data.labels);
  const Clustering *truth = data.truth ? &*data.truth : nullptr;
  ReportRow row{manifest.stem().string(), "eval", "NA",
                evaluate_graph(g, data.layers, truth, scoring(clusterer)),
                std::nullopt, std::nullopt};
  return row;
}

std::vector<double> default_across_grid(double within) {
  std::vector<double> grid;
  for (int j = 1; j <= 10; ++j)
    grid.push_back(within * j / 10.0);
  return grid;
}

std::vector<SweepPoint> sweep(const SweepSpec &spec) {
  if (spec.repetitions == 0)
    throw std::invalid_argument("repetitions must be at least 1");
  std::vector<SweepPoint> out;
  for (double p : spec.within_values) {
    const auto grid = spec.across_values.empty() ? default_across_grid(p)
                                                 : spec.across_values;
    for (double r : grid) {
      if (!(r > 0.0))
        throw std::invalid_argument("across-block probabilities must be positive");
      ExperimentSpec run;
      run.dataset = lsbm_family(spec.blocks, spec.block_size, p, r);
      run.engine = spec.engine;
      run.repetitions = spec.repetitions;
      run.seed = spec.seed;
      run.jobs = spec.jobs;
      const auto summary = run_experiment(run);
      SweepPoint point;
      point.within = p;
      point.across = r;
      point.snr = p / r;
      point.median_nmi = summary.median_learned.nmi.value_or(0.0);
      point.median_sparsity = summary.median_learned.sparsity;
      out.push_back(point);
    }
  }
  return out;
}

std::string format_sweep(const SweepSpec &spec, const std::vector<SweepPoint> &points) {
  std::ostringstream out;
  out << "# lsbm k=" << spec.blocks << " n_i=" << spec.block_size
      << " quality=" << spec.engine.quality.name()
      << " reps=" << spec.repetitions << " seed=" << spec.seed << " r_grid="
      << (spec.across_values.empty() ? "p*j/10,j=1..10" : "explicit") << '\n';
  out << "p,r,snr,median_nmi,median_sparsity\n";
  for (const auto &pt : points)
    out << format_number(pt.within) << ',' << format_number(pt.across) << ','
        << format_number(pt.snr) << ',' << format_number(pt.median_nmi) << ','
        << format_number(pt.median_sparsity) << '\n';
  return out.str();
}

BenchResult bench(const BenchSpec &spec) {
  spec.engine.validate();
  BenchResult result;
  for (std::size_t n : spec.sizes) {
    if (n < spec.blocks)
      throw std::invalid_argument("bench size smaller than the block count");
    const auto data = generate(
        lsbm_family(spec.blocks, n / spec.blocks, spec.within, spec.across),
        spec.seed);
    EngineConfig config = spec.engine;
    config.seed = spec.seed;
    const auto start = std::chrono::steady_clock::now();
    const auto run_result = run(data.layers, config, &data.truth);
    const auto stop = std::chrono::steady_clock::now();
    BenchPoint point;
    point.vertices = data.layers.num_vertices();
    point.union_edges = data.layers.union_edges().size();
    point.rounds = run_result.rounds_used;
    point.seconds = std::chrono::duration<double>(stop - start).count();
    result.points.push_back(point);
  }
  if (result.points.size() >= 2) {
    std::vector<double> edges, seconds;
    for (const auto &pt : result.points) {
      edges.push_back(static_cast<double>(pt.union_edges));
      seconds.push_back(pt.seconds);
    }
    result.slope = loglog_slope(edges, seconds);
  }
  return result;
}

std::string format_bench(const BenchResult &result) {
  std::ostringstream out;
  out << "# loglog_slope="
      << (result.slope ? format_number(*result.slope) : std::string("undefined"))
      << '\n';
  out << "vertices,union_edges,rounds,seconds\n";
  for (const auto &pt : result.points)
    out << pt.vertices << ',' << pt.union_edges << ',' << pt.rounds << ','
        << format_number(pt.seconds) << '\n';
  return out.str();
}

ConvergeReport check_convergence(const ConvergeSpec &spec) {
  const auto m = spec.layers;
  if (m == 0 || spec.n_bad >= m)
    throw std::invalid_argument("need n_bad < layers so some layer is good for every pair");
  if (spec.clusters == 0 || spec.cluster_size == 0)
    throw std::invalid_argument("need a nonempty planted clustering");
  const std::size_t n = spec.clusters * spec.cluster_size;
  const Clustering target =
      block_labels(std::vector<std::size_t>(spec.clusters, spec.cluster_size));

  // Pair j has bad layers {(j + t) mod m : t < n_bad}. A layer is good for a
  // within-cluster pair when it has the edge and for a cross pair when it
  // lacks it.
  std::vector<std::vector<VertexPair>> edges(m);
  std::size_t j = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++j)
      for (std::size_t layer = 0; layer < m; ++layer) {
        const bool bad = (layer + m - j % m) % m < spec.n_bad;
        if (target.same_cluster(u, v) != bad)
          edges[layer].emplace_back(u, v);
      }
  std::vector<Graph> graphs;
  for (auto &e : edges)
    graphs.emplace_back(n, e);
  const LayerSet layers(std::move(graphs));

  EngineConfig config;
  config.epsilon = spec.epsilon;
  config.nu = spec.epsilon;
  config.delta = spec.delta;
  config.quality.kind = QualityKind::Oracle;
  config.quality.oracle_clustering = target;
  config.clusterer.kind = ClustererKind::Null;

  ConvergeReport report;
  report.bound = convergence_bound(spec.delta, spec.epsilon, spec.n_bad);
  // No pair can be fixed before its first update.
  const std::size_t deadline = std::max<std::size_t>(report.bound, 1);
  config.max_rounds = deadline + 1;

  const WeightTable initial(layers);
  std::vector<PairStatus> before(initial.num_pairs(), PairStatus::Active);
  std::vector<std::size_t> fixed_round(initial.num_pairs(), 0);
  const std::size_t n_good = m - spec.n_bad;

  auto observer = [&](std::size_t round, const WeightTable &table) {
    for (std::size_t i = 0; i < table.num_pairs(); ++i) {
      if (before[i] != PairStatus::Active)
        continue;
      const auto [u, v] = table.pair(i);
      const bool within = target.same_cluster(u, v);
      const auto w = table.weights(i);
      double bad = 0, total = 0;
      for (std::size_t layer = 0; layer < m; ++layer) {
        total += w[layer];
        if (table.member(i, layer) != within)
          bad += w[layer];
      }
      const double simulated = bad / total;
      const double closed = oracle_bad_probability(spec.n_bad, n_good, spec.epsilon, round);
      const double err = closed == 0.0 ? std::abs(simulated)
                                       : std::abs(simulated - closed) / closed;
      report.max_relative_error = std::max(report.max_relative_error, err);
      ++report.rounds_checked;
      before[i] = table.status(i);
      if (before[i] != PairStatus::Active)
        fixed_round[i] = round;
    }
  };
  const auto result = run(layers, config, nullptr, observer);

  report.pairs = result.weights.num_pairs();
  for (std::size_t i = 0; i < report.pairs; ++i) {
    const auto status = result.weights.status(i);
    const auto [u, v] = result.weights.pair(i);
    if (status == PairStatus::Active) {
      ++report.unresolved;
      continue;
    }
    report.last_fix_round = std::max(report.last_fix_round, fixed_round[i]);
    const bool want_in = target.same_cluster(u, v);
    if ((status == PairStatus::FixedIn) != want_in)
      ++report.wrong_direction;
  }
  report.passed = report.unresolved == 0 && report.wrong_direction == 0 &&
                  report.last_fix_round <= deadline &&
                  report.max_relative_error <= 1e-12;
  return report;
}

double spearman(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("spearman needs two equal-length samples of size >= 2");
  return pearson(ranks(x), ranks(y));
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope needs two equal-length samples of size >= 2");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0))
      throw std::invalid_argument("log-log slope needs positive values");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const auto n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0)
    throw std::invalid_argument("log-log slope needs distinct x values");
  return sxy / sxx;
}

double median(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("median of an empty list");
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

} // namespace lbga
