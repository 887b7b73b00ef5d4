#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lbga/engine.hpp"
#include "lbga/graph.hpp"
#include "lbga/metrics.hpp"

namespace lbga {

/// Malformed input, reported with file and line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::filesystem::path &file, std::size_t line,
             const std::string &message);

  const std::filesystem::path &file() const { return file_; }
  std::size_t line() const { return line_; }

private:
  std::filesystem::path file_;
  std::size_t line_;
};

/// Bidirectional mapping between external vertex labels and dense ids.
class LabelMap {
public:
  LabelMap() = default;
  explicit LabelMap(std::vector<std::string> labels);
  /// Labels "0".."n-1".
  static LabelMap identity(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::string &label(Vertex v) const { return labels_.at(v); }
  std::optional<Vertex> find(const std::string &label) const;

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
};

struct EdgeLine {
  std::string u, v;
  double weight = 1.0;
};

/// Whitespace-separated "u v [weight]" lines; blank lines and lines whose
/// first non-blank character is '#' are skipped.
std::vector<EdgeLine> read_edge_list(const std::filesystem::path &path);

struct LayerEntry {
  std::string name;
  std::filesystem::path path;
  /// Edge iff weight >= alpha. Unset means any positive weight is an edge.
  std::optional<double> alpha;
};

/**
   JSON layer manifest:

     { "n": 500 | "auto",
       "layers": [ { "name": "...", "path": "...", "alpha": 0.9 }, ... ],
       "truth": "truth.txt" }

   Relative paths resolve against the manifest's directory. With a numeric
   n, labels must be the integers 0..n-1. With "auto", vertices are the
   labels seen in the layer files, ordered numerically when every label is
   a non-negative integer and lexicographically otherwise.
 */
struct LayerManifest {
  std::optional<std::size_t> n;
  std::vector<LayerEntry> layers;
  std::optional<std::filesystem::path> truth;
  std::filesystem::path base_dir;

  static LayerManifest read(const std::filesystem::path &path);
  void write(const std::filesystem::path &path) const;
};

struct LoadedDataset {
  LayerSet layers;
  LabelMap labels;
  std::vector<std::string> layer_names;
  std::optional<Clustering> truth;
};

LoadedDataset load_layers(const std::filesystem::path &manifest_path);
LoadedDataset load_layers(const LayerManifest &manifest);

/// Edge list of `path` mapped through `labels`; unknown labels are an error.
Graph load_graph(const std::filesystem::path &path, const LabelMap &labels);

/// "u v" per edge in id order, using labels when given.
void save_graph(const Graph &g, const LabelMap *labels,
                const std::filesystem::path &path);
void save_truth(const Clustering &c, const LabelMap *labels,
                const std::filesystem::path &path);

/// CSV: round,nmi,modularity,edges,weight_layer_0..m-1 ("NA" when absent).
void save_trace(const std::vector<RoundTrace> &trace,
                const std::filesystem::path &path);

struct ReportRow {
  std::string dataset;
  std::string method; // quality name, or "union"
  std::string seed;   // seed value, or "median"
  MetricReport metrics;
  std::optional<std::size_t> rounds;
  std::optional<bool> converged;
};

/// CSV with header dataset,method,seed,modularity,conductance,nmi,sparsity,
/// rounds,converged,weight_layer_0..
void save_report(const std::vector<ReportRow> &rows,
                 const std::filesystem::path &path);
std::string format_report(const std::vector<ReportRow> &rows);

/// Ten significant digits; used for every number in the CSV outputs.
std::string format_number(double x);

} // namespace lbga
