#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lbga/experiments.hpp"

namespace fs = std::filesystem;
using namespace lbga;

namespace {

struct EngineFlags {
  std::string quality = "consistentno";
  std::string clusterer = "walktrap";
  int walk_length = 4;
  double log_base = 0; // 0 keeps the natural log
  EngineConfig config;

  void add(CLI::App *cmd) {
    cmd->add_option("--quality", quality,
                    "ec, no, consistentno, jaccard, dice, consistentjaccard, "
                    "consistentdice or oracle")
        ->capture_default_str();
    cmd->add_option("--epsilon", config.epsilon, "learning rate for member layers")
        ->capture_default_str();
    cmd->add_option("--nu", config.nu, "learning rate for non-member layers")
        ->capture_default_str();
    cmd->add_option("--delta", config.delta, "fixing threshold")->capture_default_str();
    cmd->add_option("--max-rounds", config.max_rounds)->capture_default_str();
    cmd->add_option("--clusterer", clusterer, "walktrap, components or null")
        ->capture_default_str();
    cmd->add_option("--walk-length", walk_length)->capture_default_str();
    cmd->add_option("--log-base", log_base,
                    "logarithm base in neighborhood overlap (default e)");
  }

  EngineConfig build() const {
    EngineConfig out = config;
    out.quality = QualitySpec::from_name(quality);
    if (log_base != 0)
      out.quality.log_base = log_base;
    out.clusterer = ClustererSpec::from_name(clusterer, walk_length);
    return out;
  }
};

void write_text(const std::string &text, const std::optional<fs::path> &path) {
  std::cout << text;
  if (path) {
    if (path->has_parent_path())
      fs::create_directories(path->parent_path());
    std::ofstream out(*path);
    if (!out)
      throw std::runtime_error("cannot write " + path->string());
    out << text;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Locally boosted graph aggregation experiments"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);

  // generate
  auto *gen = app.add_subcommand("generate", "write a synthetic preset to disk");
  std::string gen_preset;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--dataset,preset", gen_preset, "preset name")->required();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--out", gen_out, "output directory")->required();

  // run
  auto *runc = app.add_subcommand("run", "run the engine over several seeds");
  std::string run_dataset, run_manifest, run_out;
  std::optional<double> run_alpha;
  std::uint64_t run_seed = 1;
  std::size_t run_reps = 5, run_jobs = 0;
  EngineFlags run_flags;
  auto *ds = runc->add_option("--dataset", run_dataset, "synthetic preset name");
  auto *mf = runc->add_option("--manifest", run_manifest, "layer manifest (JSON)")
                 ->check(CLI::ExistingFile);
  ds->excludes(mf);
  runc->add_option("--seed", run_seed, "first seed; repetition r uses seed + r")
      ->capture_default_str();
  runc->add_option("--reps", run_reps)->capture_default_str();
  runc->add_option("--out", run_out, "directory for report, traces and graphs");
  runc->add_option("--alpha", run_alpha, "edge threshold for every manifest layer");
  runc->add_option("--jobs", run_jobs, "parallel seeds (0: all cores)")
      ->capture_default_str();
  run_flags.add(runc);

  // eval
  auto *evalc = app.add_subcommand("eval", "score a graph file against a manifest");
  std::string eval_manifest, eval_graph, eval_clusterer = "walktrap";
  int eval_walk = 4;
  std::optional<double> eval_alpha;
  evalc->add_option("--manifest", eval_manifest)->required()->check(CLI::ExistingFile);
  evalc->add_option("--graph", eval_graph, "edge list")->required()->check(CLI::ExistingFile);
  evalc->add_option("--clusterer", eval_clusterer)->capture_default_str();
  evalc->add_option("--walk-length", eval_walk)->capture_default_str();
  evalc->add_option("--alpha", eval_alpha);

  // sweep
  auto *sweepc = app.add_subcommand("sweep", "NMI across signal-to-noise ratios");
  SweepSpec sweep_spec;
  EngineFlags sweep_flags;
  std::optional<fs::path> sweep_out;
  sweepc->add_option("--within", sweep_spec.within_values, "within-block probabilities p")
      ->capture_default_str();
  sweepc->add_option("--across", sweep_spec.across_values,
                     "across-block probabilities r (default p*j/10, j=1..10)");
  sweepc->add_option("--blocks", sweep_spec.blocks)->capture_default_str();
  sweepc->add_option("--block-size", sweep_spec.block_size)->capture_default_str();
  sweepc->add_option("--reps", sweep_spec.repetitions)->capture_default_str();
  sweepc->add_option("--seed", sweep_spec.seed)->capture_default_str();
  sweepc->add_option("--jobs", sweep_spec.jobs)->capture_default_str();
  sweepc->add_option("--out", sweep_out, "CSV file");
  sweep_flags.add(sweepc);

  // bench
  auto *benchc = app.add_subcommand("bench", "wall time against union edge count");
  BenchSpec bench_spec;
  EngineFlags bench_flags;
  std::optional<fs::path> bench_out;
  benchc->add_option("--sizes", bench_spec.sizes, "total vertex counts")
      ->capture_default_str();
  benchc->add_option("--blocks", bench_spec.blocks, "blocks and layers")
      ->capture_default_str();
  benchc->add_option("--within", bench_spec.within)->capture_default_str();
  benchc->add_option("--across", bench_spec.across)->capture_default_str();
  benchc->add_option("--seed", bench_spec.seed)->capture_default_str();
  benchc->add_option("--out", bench_out, "CSV file");
  bench_flags.add(benchc);

  // converge
  auto *conv = app.add_subcommand("converge", "check the oracle convergence bound");
  ConvergeSpec conv_spec;
  conv->add_option("--layers", conv_spec.layers)->capture_default_str();
  conv->add_option("--n-bad", conv_spec.n_bad, "disagreeing layers per pair")
      ->capture_default_str();
  conv->add_option("--epsilon", conv_spec.epsilon)->capture_default_str();
  conv->add_option("--delta", conv_spec.delta)->capture_default_str();
  conv->add_option("--cluster-size", conv_spec.cluster_size)->capture_default_str();
  conv->add_option("--clusters", conv_spec.clusters)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const fs::path out = gen_out;
      fs::create_directories(out);
      const auto manifest = generate_dataset(preset(gen_preset), gen_seed, out);
      std::cout << manifest.string() << '\n';
    } else if (runc->parsed()) {
      if (run_dataset.empty() == run_manifest.empty())
        throw std::invalid_argument("give exactly one of --dataset or --manifest");
      ExperimentSpec spec;
      if (!run_dataset.empty())
        spec.dataset = preset(run_dataset);
      else
        spec.dataset = fs::path(run_manifest);
      spec.engine = run_flags.build();
      spec.repetitions = run_reps;
      spec.seed = run_seed;
      spec.jobs = run_jobs;
      spec.alpha = run_alpha;
      if (!run_out.empty()) {
        spec.out_dir = fs::path(run_out);
        fs::create_directories(*spec.out_dir);
      }
      const auto summary = run_experiment(spec);
      std::cout << format_report(summary.rows);
    } else if (evalc->parsed()) {
      const auto row = evaluate_file(eval_manifest, eval_graph,
                                     ClustererSpec::from_name(eval_clusterer, eval_walk),
                                     eval_alpha);
      std::cout << format_report({row});
    } else if (sweepc->parsed()) {
      sweep_spec.engine = sweep_flags.build();
      const auto points = sweep(sweep_spec);
      write_text(format_sweep(sweep_spec, points), sweep_out);
    } else if (benchc->parsed()) {
      bench_spec.engine = bench_flags.build();
      const auto result = bench(bench_spec);
      write_text(format_bench(result), bench_out);
    } else if (conv->parsed()) {
      const auto r = check_convergence(conv_spec);
      std::cout << "bound,last_fix_round,pairs,wrong_direction,unresolved,"
                   "max_relative_error,passed\n"
                << r.bound << ',' << r.last_fix_round << ',' << r.pairs << ','
                << r.wrong_direction << ',' << r.unresolved << ','
                << format_number(r.max_relative_error) << ','
                << (r.passed ? "true" : "false") << '\n';
      return r.passed ? 0 : 1;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
