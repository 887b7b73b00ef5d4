#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lbga/generators.hpp"
#include "lbga/io.hpp"

using namespace lbga;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name)
      : path(fs::temp_directory_path() / ("lbga_io_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string &file, const std::string &text) const {
    std::ofstream(path / file) << text;
    return path / file;
  }
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const fs::path &p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);)
    ++n;
  return n;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("two labeled layers") {
  TempDir dir("labels");
  dir.write("a.txt", "a b\n");
  dir.write("b.txt", "# comment\n\nb c\n");
  const auto manifest = dir.write(
      "m.json", R"({"n": "auto", "layers": [{"path": "a.txt"}, {"path": "b.txt"}]})");
  const auto data = load_layers(manifest);
  CHECK(data.layers.num_vertices() == 3);
  CHECK(data.layers.union_edges().size() == 2);
  CHECK(data.labels.label(0) == "a");
  CHECK(data.layer_names == std::vector<std::string>{"a", "b"});
  CHECK_FALSE(data.truth);
}

TEST_CASE("numeric labels sort numerically under auto") {
  TempDir dir("numeric");
  dir.write("a.txt", "10 2\n2 9\n");
  const auto data = load_layers(dir.write("m.json", R"({"layers": [{"path": "a.txt"}]})"));
  CHECK(data.labels.label(0) == "2");
  CHECK(data.labels.label(1) == "9");
  CHECK(data.labels.label(2) == "10");
}

TEST_CASE("alpha thresholds weighted layers") {
  TempDir dir("alpha");
  dir.write("w.txt", "0 1 0.95\n1 2 0.9\n2 3 0.5\n0 3 0\n");
  const auto m = dir.write(
      "m.json", R"({"n": 4, "layers": [{"name": "w", "path": "w.txt", "alpha": 0.9}]})");
  const auto data = load_layers(m);
  const auto &g = data.layers.layer(0);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(2, 3));
  // Without alpha, any positive weight is an edge.
  const auto loose = load_layers(dir.write("n.json", R"({"n": 4, "layers": [{"path": "w.txt"}]})"));
  CHECK(loose.layers.layer(0).num_edges() == 3);
}

TEST_CASE("duplicate lines collapse") {
  TempDir dir("dup");
  dir.write("a.txt", "0 1\n1 0\n0 1\n");
  const auto data = load_layers(dir.write("m.json", R"({"n": 2, "layers": [{"path": "a.txt"}]})"));
  CHECK(data.layers.layer(0).num_edges() == 1);
}

TEST_CASE("truth files") {
  TempDir dir("truth");
  dir.write("a.txt", "x y\ny z\nz w\n");
  dir.write("t.txt", "x red\ny red\nz blue\n");
  const auto data = load_layers(
      dir.write("m.json", R"({"layers": [{"path": "a.txt"}], "truth": "t.txt"})"));
  REQUIRE(data.truth);
  const auto &t = *data.truth;
  const auto id = [&](const char *s) { return *data.labels.find(s); };
  CHECK(t.same_cluster(id("x"), id("y")));
  CHECK_FALSE(t.same_cluster(id("x"), id("z")));
  // w is unlabeled and gets its own cluster.
  CHECK(t.num_clusters() == 3);

  dir.write("bad.txt", "q red\n");
  CHECK_THROWS(load_layers(
      dir.write("m2.json", R"({"layers": [{"path": "a.txt"}], "truth": "bad.txt"})")));
  dir.write("twice.txt", "x red\nx blue\n");
  CHECK_THROWS(load_layers(
      dir.write("m3.json", R"({"layers": [{"path": "a.txt"}], "truth": "twice.txt"})")));
}

TEST_CASE("malformed input is reported") {
  TempDir dir("errors");
  dir.write("a.txt", "0 1\n2\n");
  try {
    read_edge_list(dir.path / "a.txt");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  dir.write("w.txt", "0 1 heavy\n");
  CHECK_THROWS_AS(read_edge_list(dir.path / "w.txt"), ParseError);
  dir.write("ok.txt", "0 1\n");
  CHECK_THROWS_AS(LayerManifest::read(dir.write("m1.json", "{not json")), ParseError);
  CHECK_THROWS_AS(LayerManifest::read(dir.write("m2.json", R"({"n": 2})")), ParseError);
  CHECK_THROWS_AS(LayerManifest::read(dir.write("m3.json", R"({"layers": []})")), ParseError);
  CHECK_THROWS_AS(LayerManifest::read(dir.write("m4.json", R"({"n": -1, "layers": [{"path": "ok.txt"}]})")),
                  ParseError);
  CHECK_THROWS_AS(
      LayerManifest::read(dir.write(
          "m5.json", R"({"layers": [{"name": "x", "path": "ok.txt"}, {"name": "x", "path": "ok.txt"}]})")),
      ParseError);
  // Labels outside 0..n-1 with a numeric n.
  CHECK_THROWS(load_layers(dir.write("m6.json", R"({"n": 1, "layers": [{"path": "ok.txt"}]})")));
  CHECK_THROWS(load_layers(dir.write("m7.json", R"({"layers": [{"path": "missing.txt"}]})")));
}

TEST_CASE("save_graph writes one line per edge") {
  TempDir dir("save");
  const std::vector<VertexPair> e{{1, 2}, {0, 2}, {0, 1}};
  save_graph(Graph(3, e), nullptr, dir.path / "g.txt");
  CHECK(slurp(dir.path / "g.txt") == "0 1\n0 2\n1 2\n");
}

TEST_CASE("trace and report files") {
  TempDir dir("trace");
  std::vector<RoundTrace> trace(300);
  for (std::size_t i = 0; i < 300; ++i) {
    trace[i].round = i + 1;
    trace[i].layer_weights = {0.5, 0.5};
    if (i % 2)
      trace[i].nmi = 0.25;
  }
  save_trace(trace, dir.path / "trace.csv");
  CHECK(count_lines(dir.path / "trace.csv") == 301);
  const auto text = slurp(dir.path / "trace.csv");
  CHECK(text.rfind("round,nmi,modularity,edges,weight_layer_0,weight_layer_1\n1,NA,NA,0,0.5,0.5\n", 0) == 0);

  MetricReport m;
  m.modularity = 0.75;
  m.nmi = 1.0;
  m.sparsity = 0.573;
  m.layer_weights = {0.25, 0.75};
  save_report({{"GSBM-2", "consistentno", "1", m, 1000, false}}, dir.path / "r.csv");
  CHECK(slurp(dir.path / "r.csv") ==
        "dataset,method,seed,modularity,conductance,nmi,sparsity,rounds,converged,"
        "weight_layer_0,weight_layer_1\n"
        "GSBM-2,consistentno,1,0.75,0,1,0.573,1000,false,0.25,0.75\n");
}

}

TEST_SUITE("properties") {

TEST_CASE("save and load round-trip") {
  TempDir dir("roundtrip");
  const auto data = generate(preset("GSBM-1"), 3);
  LayerManifest m;
  m.n = 500;
  for (std::size_t i = 0; i < data.layers.num_layers(); ++i) {
    const auto name = "l" + std::to_string(i) + ".txt";
    save_graph(data.layers.layer(i), nullptr, dir.path / name);
    m.layers.push_back({"l" + std::to_string(i), name, std::nullopt});
  }
  save_truth(data.truth, nullptr, dir.path / "truth.txt");
  m.truth = "truth.txt";
  m.write(dir.path / "m.json");
  const auto back = load_layers(dir.path / "m.json");
  REQUIRE(back.layers.num_layers() == data.layers.num_layers());
  for (std::size_t i = 0; i < data.layers.num_layers(); ++i)
    CHECK(back.layers.layer(i) == data.layers.layer(i));
  CHECK(*back.truth == data.truth);

  // Labels survive a round trip through a labeled graph file.
  save_graph(back.layers.layer(0), &back.labels, dir.path / "g.txt");
  CHECK(load_graph(dir.path / "g.txt", back.labels) == data.layers.layer(0));
}

}
