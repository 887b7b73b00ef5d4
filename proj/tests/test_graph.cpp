#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lbga/generators.hpp"
#include "lbga/graph.hpp"

using namespace lbga;

namespace {

Graph triangle() {
  const std::vector<VertexPair> e{{0, 1}, {1, 2}, {0, 2}};
  return Graph(3, e);
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("has_edge on small graphs") {
  const auto t = triangle();
  CHECK(t.has_edge(0, 1));
  CHECK(t.has_edge(1, 0));
  CHECK_FALSE(t.has_edge(0, 0));
  const Graph empty(5);
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = 0; v < 5; ++v)
      CHECK_FALSE(empty.has_edge(u, v));
  CHECK_THROWS_AS(t.has_edge(0, 3), std::out_of_range);
}

TEST_CASE("neighbors and degree") {
  const std::vector<VertexPair> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  const Graph s(6, star);
  CHECK(s.degree(0) == 4);
  CHECK(s.neighbors(5).empty());

  const std::vector<VertexPair> path{{1, 0}, {1, 2}};
  const Graph p(3, path);
  const auto nb = p.neighbors(1);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0] == 0);
  CHECK(nb[1] == 2);
}

TEST_CASE("construction drops loops and duplicates") {
  const std::vector<VertexPair> e{{0, 1}, {1, 0}, {2, 2}, {0, 1}, {1, 2}};
  const Graph g(3, e);
  CHECK(g.num_edges() == 2);
  CHECK(g.edges() == std::vector<VertexPair>{{0, 1}, {1, 2}});
  const std::vector<VertexPair> bad{{0, 3}};
  CHECK_THROWS_AS(Graph(3, bad), std::out_of_range);
}

TEST_CASE("union of layers") {
  const std::vector<VertexPair> a{{0, 1}}, b{{1, 2}};
  const LayerSet layers({Graph(3, a), Graph(3, b)});
  const auto u = graph_union(layers);
  CHECK(u.edges() == std::vector<VertexPair>{{0, 1}, {1, 2}});
  CHECK(layers.union_edges() == u.edges());

  const LayerSet single({triangle()});
  CHECK(graph_union(single) == triangle());
}

TEST_CASE("layer sets validate their input") {
  CHECK_THROWS_AS(LayerSet({}), std::invalid_argument);
  CHECK_THROWS_AS(LayerSet({Graph(3), Graph(4)}), std::invalid_argument);
}

TEST_CASE("union density of GSBM-2 matches inclusion-exclusion") {
  // A pair is in the union unless all four independent layers miss it.
  const double within = 1.0 - std::pow(1.0 - 0.3, 4);
  const double across = 1.0 - std::pow(1.0 - 0.05, 4);
  CHECK(within == doctest::Approx(0.7599).epsilon(1e-4));
  CHECK(across == doctest::Approx(0.1855).epsilon(1e-3));

  const auto data = generate(preset("GSBM-2"), 7);
  const auto u = graph_union(data.layers);
  double in = 0, out = 0;
  for (auto [a, b] : u.edges())
    (data.truth.same_cluster(a, b) ? in : out) += 1;
  const double n_in = 4 * 125.0 * 124 / 2;
  const double n_out = 500.0 * 499 / 2 - n_in;
  CHECK(std::abs(in - n_in * within) < 4 * std::sqrt(n_in * within * (1 - within)));
  CHECK(std::abs(out - n_out * across) < 4 * std::sqrt(n_out * across * (1 - across)));
}

TEST_CASE("clusterings are compared up to relabeling") {
  const std::vector<std::uint32_t> a{5, 5, 9, 2}, b{0, 0, 1, 2}, c{0, 1, 1, 2};
  CHECK(Clustering(a) == Clustering(b));
  CHECK_FALSE(Clustering(a) == Clustering(c));
  CHECK(Clustering(a).num_clusters() == 3);
  CHECK(Clustering::singletons(4).num_clusters() == 4);
  CHECK(Clustering::single_cluster(4).num_clusters() == 1);
  CHECK_THROWS_AS(Clustering(a).at(4), std::out_of_range);
}

}
