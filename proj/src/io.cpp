#include "lbga/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lbga {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::ifstream open_in(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const fs::path &path) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream &out, const fs::path &path) {
  out.flush();
  if (!out)
    throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::optional<std::uint64_t> as_index(const std::string &s) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  // Reject non-canonical spellings such as "007" so labels round-trip.
  if (s.size() > 1 && s[0] == '0')
    return std::nullopt;
  return value;
}

fs::path resolve(const fs::path &base, const fs::path &p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::vector<std::pair<std::string, std::string>>
read_truth_lines(const fs::path &path) {
  auto in = open_in(path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a) || a[0] == '#')
      continue;
    if (!(tokens >> b) || (tokens >> extra))
      throw ParseError(path, lineno, "expected 'vertex cluster'");
    out.emplace_back(a, b);
  }
  return out;
}

} // namespace

ParseError::ParseError(const fs::path &file, std::size_t line,
                       const std::string &message)
    : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " +
                         message),
      file_(file), line_(line) {}

LabelMap::LabelMap(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (!index_.emplace(labels_[i], static_cast<Vertex>(i)).second)
      throw std::invalid_argument("duplicate vertex label '" + labels_[i] + "'");
}

LabelMap LabelMap::identity(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i)
    labels[i] = std::to_string(i);
  return LabelMap(std::move(labels));
}

std::optional<Vertex> LabelMap::find(const std::string &label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

std::vector<EdgeLine> read_edge_list(const fs::path &path) {
  auto in = open_in(path);
  std::vector<EdgeLine> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    std::istringstream tokens(line);
    EdgeLine e;
    if (!(tokens >> e.u) || e.u[0] == '#')
      continue;
    if (!(tokens >> e.v))
      throw ParseError(path, lineno, "expected 'u v [weight]'");
    std::string weight, extra;
    if (tokens >> weight) {
      auto [ptr, ec] =
          std::from_chars(weight.data(), weight.data() + weight.size(), e.weight);
      if (ec != std::errc() || ptr != weight.data() + weight.size())
        throw ParseError(path, lineno, "bad weight '" + weight + "'");
      if (tokens >> extra)
        throw ParseError(path, lineno, "too many fields");
    }
    out.push_back(std::move(e));
  }
  return out;
}

LayerManifest LayerManifest::read(const fs::path &path) {
  auto in = open_in(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError(path, 0, e.what());
  }
  LayerManifest m;
  m.base_dir = path.parent_path();
  try {
    if (doc.contains("n")) {
      const auto &n = doc.at("n");
      if (n.is_number_unsigned())
        m.n = n.get<std::size_t>();
      else if (!(n.is_string() && n.get<std::string>() == "auto"))
        throw ParseError(path, 0, "\"n\" must be a non-negative integer or \"auto\"");
    }
    std::set<std::string> names;
    for (const auto &entry : doc.at("layers")) {
      LayerEntry layer;
      layer.path = entry.at("path").get<std::string>();
      layer.name = entry.value("name", layer.path.stem().string());
      if (entry.contains("alpha"))
        layer.alpha = entry.at("alpha").get<double>();
      if (!names.insert(layer.name).second)
        throw ParseError(path, 0, "duplicate layer name '" + layer.name + "'");
      m.layers.push_back(std::move(layer));
    }
    if (doc.contains("truth"))
      m.truth = fs::path(doc.at("truth").get<std::string>());
  } catch (const json::exception &e) {
    throw ParseError(path, 0, e.what());
  }
  if (m.layers.empty())
    throw ParseError(path, 0, "manifest lists no layers");
  return m;
}

void LayerManifest::write(const fs::path &path) const {
  json doc;
  doc["n"] = n ? json(*n) : json("auto");
  doc["layers"] = json::array();
  for (const auto &layer : layers) {
    json entry{{"name", layer.name}, {"path", layer.path.generic_string()}};
    if (layer.alpha)
      entry["alpha"] = *layer.alpha;
    doc["layers"].push_back(entry);
  }
  if (truth)
    doc["truth"] = truth->generic_string();
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  finish(out, path);
}

LoadedDataset load_layers(const fs::path &manifest_path) {
  return load_layers(LayerManifest::read(manifest_path));
}

LoadedDataset load_layers(const LayerManifest &manifest) {
  std::vector<fs::path> paths;
  std::vector<std::vector<EdgeLine>> raw;
  for (const auto &layer : manifest.layers) {
    paths.push_back(resolve(manifest.base_dir, layer.path));
    raw.push_back(read_edge_list(paths.back()));
  }

  LabelMap labels;
  if (manifest.n) {
    labels = LabelMap::identity(*manifest.n);
  } else {
    std::set<std::string> seen;
    for (const auto &lines : raw)
      for (const auto &e : lines) {
        seen.insert(e.u);
        seen.insert(e.v);
      }
    std::vector<std::string> ordered(seen.begin(), seen.end());
    const bool numeric = std::all_of(ordered.begin(), ordered.end(),
                                     [](const auto &s) { return as_index(s).has_value(); });
    if (numeric)
      std::sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
        return *as_index(a) < *as_index(b);
      });
    labels = LabelMap(std::move(ordered));
  }

  std::vector<Graph> graphs;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto &entry = manifest.layers[i];
    std::vector<VertexPair> edges;
    for (const auto &e : raw[i]) {
      const bool present = entry.alpha ? e.weight >= *entry.alpha : e.weight > 0.0;
      if (!present)
        continue;
      auto u = labels.find(e.u), v = labels.find(e.v);
      if (!u || !v)
        throw std::runtime_error(paths[i].string() + ": vertex label '" +
                                 (u ? e.v : e.u) + "' outside 0.." +
                                 std::to_string(labels.size() - 1));
      edges.emplace_back(*u, *v);
    }
    graphs.emplace_back(labels.size(), edges);
  }

  LoadedDataset out{LayerSet(std::move(graphs)), std::move(labels), {}, {}};
  for (const auto &layer : manifest.layers)
    out.layer_names.push_back(layer.name);

  if (manifest.truth) {
    const auto truth_path = resolve(manifest.base_dir, *manifest.truth);
    std::vector<std::optional<std::string>> cluster_of(out.labels.size());
    for (const auto &[vertex, cluster_label] : read_truth_lines(truth_path)) {
      auto v = out.labels.find(vertex);
      if (!v)
        throw std::runtime_error(truth_path.string() + ": vertex '" + vertex +
                                 "' appears in the truth file but in no layer");
      if (cluster_of[*v])
        throw std::runtime_error(truth_path.string() + ": vertex '" + vertex +
                                 "' labeled twice");
      cluster_of[*v] = cluster_label;
    }
    // Unlabeled vertices become singletons.
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::uint32_t> assignment(out.labels.size());
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < cluster_of.size(); ++v) {
      if (!cluster_of[v]) {
        assignment[v] = next++;
        continue;
      }
      auto [it, inserted] = ids.try_emplace(*cluster_of[v], next);
      if (inserted)
        ++next;
      assignment[v] = it->second;
    }
    out.truth = Clustering(assignment);
  }
  return out;
}

Graph load_graph(const fs::path &path, const LabelMap &labels) {
  std::vector<VertexPair> edges;
  for (const auto &e : read_edge_list(path)) {
    auto u = labels.find(e.u), v = labels.find(e.v);
    if (!u || !v)
      throw std::runtime_error(path.string() + ": unknown vertex label '" +
                               (u ? e.v : e.u) + "'");
    if (e.weight > 0.0)
      edges.emplace_back(*u, *v);
  }
  return Graph(labels.size(), edges);
}

void save_graph(const Graph &g, const LabelMap *labels, const fs::path &path) {
  auto out = open_out(path);
  for (auto [u, v] : g.edges()) {
    if (labels)
      out << labels->label(u) << ' ' << labels->label(v) << '\n';
    else
      out << u << ' ' << v << '\n';
  }
  finish(out, path);
}

void save_truth(const Clustering &c, const LabelMap *labels, const fs::path &path) {
  auto out = open_out(path);
  for (Vertex v = 0; v < c.num_vertices(); ++v) {
    if (labels)
      out << labels->label(v);
    else
      out << v;
    out << ' ' << c[v] << '\n';
  }
  finish(out, path);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void save_trace(const std::vector<RoundTrace> &trace, const fs::path &path) {
  auto out = open_out(path);
  const std::size_t m = trace.empty() ? 0 : trace.front().layer_weights.size();
  out << "round,nmi,modularity,edges";
  for (std::size_t i = 0; i < m; ++i)
    out << ",weight_layer_" << i;
  out << '\n';
  auto opt = [](const std::optional<double> &x) {
    return x ? format_number(*x) : std::string("NA");
  };
  for (const auto &t : trace) {
    out << t.round << ',' << opt(t.nmi) << ',' << opt(t.modularity) << ','
        << t.edges;
    for (double w : t.layer_weights)
      out << ',' << format_number(w);
    out << '\n';
  }
  finish(out, path);
}

std::string format_report(const std::vector<ReportRow> &rows) {
  std::size_t m = 0;
  for (const auto &r : rows)
    m = std::max(m, r.metrics.layer_weights.size());
  std::ostringstream out;
  out << "dataset,method,seed,modularity,conductance,nmi,sparsity,rounds,converged";
  for (std::size_t i = 0; i < m; ++i)
    out << ",weight_layer_" << i;
  out << '\n';
  for (const auto &r : rows) {
    const auto &x = r.metrics;
    out << r.dataset << ',' << r.method << ',' << r.seed << ','
        << (x.modularity ? format_number(*x.modularity) : "NA") << ','
        << format_number(x.conductance_sum) << ','
        << (x.nmi ? format_number(*x.nmi) : "NA") << ','
        << format_number(x.sparsity) << ','
        << (r.rounds ? std::to_string(*r.rounds) : "NA") << ','
        << (r.converged ? (*r.converged ? "true" : "false") : "NA");
    for (std::size_t i = 0; i < m; ++i)
      out << ','
          << (i < x.layer_weights.size() ? format_number(x.layer_weights[i]) : "NA");
    out << '\n';
  }
  return out.str();
}

void save_report(const std::vector<ReportRow> &rows, const fs::path &path) {
  auto out = open_out(path);
  out << format_report(rows);
  finish(out, path);
}

} // namespace lbga
