#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lbga/generators.hpp"

using namespace lbga;

namespace {

// Edge count of a seeded draw lies within 4 standard deviations of a
// binomial(trials, p) mean.
void check_binomial(std::size_t edges, double trials, double p) {
  const double mean = trials * p;
  const double sd = std::sqrt(trials * p * (1 - p));
  CHECK(std::abs(static_cast<double>(edges) - mean) <= 4 * sd);
}

double pairs(double n) { return n * (n - 1) / 2; }

} // namespace

TEST_SUITE("generators") {

TEST_CASE("sbm extremes") {
  const auto k = sbm(BlockModelSpec::planted({7}, 1.0, 0.0), 3);
  CHECK(k.num_edges() == 21);
  const auto two = sbm(BlockModelSpec::planted({3, 4}, 1.0, 0.0), 3);
  CHECK(two.num_edges() == 3 + 6);
  CHECK_FALSE(two.has_edge(0, 3));
}

TEST_CASE("sbm edge count is binomial") {
  check_binomial(sbm(BlockModelSpec::planted({125}, 0.3, 0.0), 11).num_edges(),
                 pairs(125), 0.3);
  CHECK(pairs(125) * 0.3 == doctest::Approx(2325));
}

TEST_CASE("sbm with p = r behaves like Erdos-Renyi") {
  const auto g = sbm(BlockModelSpec::planted({100, 100}, 0.05, 0.05), 5);
  check_binomial(g.num_edges(), pairs(200), 0.05);
  const auto clusters = block_labels({100, 100});
  double within = 0;
  for (auto [u, v] : g.edges())
    within += clusters.same_cluster(u, v);
  check_binomial(static_cast<std::size_t>(within), 2 * pairs(100), 0.05);
}

TEST_CASE("erdos_renyi") {
  CHECK(erdos_renyi(30, 0.0, 1).num_edges() == 0);
  CHECK(erdos_renyi(30, 1.0, 1).num_edges() == 435);
  CHECK(pairs(500) * 0.01 == doctest::Approx(1247.5));
  check_binomial(erdos_renyi(500, 0.01, 2).num_edges(), pairs(500), 0.01);
}

TEST_CASE("seeded draws are reproducible") {
  CHECK(erdos_renyi(100, 0.1, 9) == erdos_renyi(100, 0.1, 9));
  CHECK_FALSE(erdos_renyi(100, 0.1, 9) == erdos_renyi(100, 0.1, 10));
  const auto a = generate(preset("GSBM-2"), 4), b = generate(preset("GSBM-2"), 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(a.layers.layer(i) == b.layers.layer(i));
}

TEST_CASE("GSBM-2 layers") {
  const auto data = generate(preset("GSBM-2"), 1);
  REQUIRE(data.layers.num_layers() == 4);
  CHECK(data.layers.num_vertices() == 500);
  CHECK(data.truth.num_clusters() == 4);
  const double in = 4 * pairs(125), out = pairs(500) - in;
  CHECK(in * 0.3 + out * 0.05 == doctest::Approx(13987.5));
  for (const auto &layer : data.layers.layers()) {
    // Sum of two independent binomials.
    const double mean = in * 0.3 + out * 0.05;
    const double sd = std::sqrt(in * 0.3 * 0.7 + out * 0.05 * 0.95);
    CHECK(std::abs(static_cast<double>(layer.num_edges()) - mean) <= 4 * sd);
  }
  // Layers are independent draws.
  CHECK_FALSE(data.layers.layer(0) == data.layers.layer(1));
}

TEST_CASE("GSBM-3 adds a sparse uniform layer") {
  const auto data = generate(preset("GSBM-3"), 1);
  REQUIRE(data.layers.num_layers() == 5);
  check_binomial(data.layers.layer(4).num_edges(), pairs(500), 0.01);
}

TEST_CASE("single-layer GSBM reduces to sbm") {
  const auto layers = gsbm_layers({50, 50}, {0.4}, {0.1}, 8);
  REQUIRE(layers.num_layers() == 1);
  const auto &g = layers.layer(0);
  const auto c = block_labels({50, 50});
  double within = 0;
  for (auto [u, v] : g.edges())
    within += c.same_cluster(u, v);
  check_binomial(static_cast<std::size_t>(within), 2 * pairs(50), 0.4);
  check_binomial(g.num_edges() - static_cast<std::size_t>(within), 2500, 0.1);
}

TEST_CASE("LSBM with two blocks has the block matrices B1 and B2") {
  // p = 1 and r = 0 make each layer exactly its block pattern.
  const auto layers = lsbm_layers({4, 5}, {1.0, 1.0}, {0.0, 0.0}, 2);
  const auto c = block_labels({4, 5});
  for (std::size_t i = 0; i < 2; ++i) {
    const auto &g = layers.layer(i);
    for (Vertex u = 0; u < 9; ++u)
      for (Vertex v = u + 1; v < 9; ++v) {
        const bool expect = c[u] == i && c[v] == i;
        CHECK(g.has_edge(u, v) == expect);
      }
  }
}

TEST_CASE("LSBM-3 preset") {
  const auto data = generate(preset("LSBM-3"), 1);
  REQUIRE(data.layers.num_layers() == 5);
  check_binomial(data.layers.layer(4).num_edges(), pairs(500), 0.01);
  // Layer 0 is dense only on block 0.
  const auto &g = data.layers.layer(0);
  double block0 = 0;
  for (auto [u, v] : g.edges())
    block0 += data.truth[u] == data.truth[0] && data.truth[v] == data.truth[0];
  check_binomial(static_cast<std::size_t>(block0), pairs(125), 0.3);
}

TEST_CASE("LSBM with p = r is all Erdos-Renyi") {
  const auto layers = lsbm_layers({40, 40}, {0.1, 0.1}, {0.1, 0.1}, 6);
  for (const auto &g : layers.layers())
    check_binomial(g.num_edges(), pairs(80), 0.1);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(sbm(BlockModelSpec::planted({3}, 1.5, 0.0), 1), std::invalid_argument);
  BlockModelSpec asym{{2, 2}, {0.5, 0.1, 0.2, 0.5}};
  CHECK_THROWS_AS(asym.validate(), std::invalid_argument);
  CHECK_THROWS_AS(lsbm_layers({3, 3}, {0.5}, {0.1}, 1), std::invalid_argument);
}

TEST_CASE("presets") {
  CHECK(builtin_presets().size() == 9);
  CHECK(preset("gsbm-2").name == "GSBM-2");
  CHECK(preset("ER only").family == ModelFamily::ER);
  try {
    preset("nope");
    FAIL("expected an exception");
  } catch (const std::invalid_argument &e) {
    CHECK(std::string(e.what()).find("LSBM-3") != std::string::npos);
  }
  const auto gsbm4 = preset("GSBM-4");
  CHECK(gsbm4.within == std::vector<double>{0.1625, 0.125, 0.125, 0.0875});
}

}
