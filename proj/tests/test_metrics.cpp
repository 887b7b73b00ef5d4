#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "lbga/generators.hpp"
#include "lbga/metrics.hpp"

using namespace lbga;

namespace {

Clustering labels(std::vector<std::uint32_t> l) { return Clustering(l); }

std::vector<VertexPair> cliques(Vertex k, Vertex size) {
  std::vector<VertexPair> e;
  for (Vertex b = 0; b < k; ++b)
    for (Vertex u = b * size; u < (b + 1) * size; ++u)
      for (Vertex v = u + 1; v < (b + 1) * size; ++v)
        e.emplace_back(u, v);
  return e;
}

// -2 I / (H_a + H_b) from the contingency table.
double nmi_oracle(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b) {
  const double n = static_cast<double>(a.size());
  std::map<std::uint32_t, double> na, nb;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> nab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na[a[i]] += 1;
    nb[b[i]] += 1;
    nab[{a[i], b[i]}] += 1;
  }
  double num = 0, ha = 0, hb = 0;
  for (auto [k, c] : nab)
    num += c * std::log(c * n / (na[k.first] * nb[k.second]));
  for (auto [k, c] : na)
    ha += c * std::log(c / n);
  for (auto [k, c] : nb)
    hb += c * std::log(c / n);
  return -2 * num / (ha + hb);
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("nmi examples") {
  const auto a = labels({0, 0, 1, 1}), b = labels({0, 1, 0, 1});
  CHECK(nmi(a, a) == doctest::Approx(1.0));
  CHECK(nmi(a, b) == doctest::Approx(0.0));
  CHECK(nmi(Clustering::single_cluster(4), a) == 0.0);
  CHECK(nmi(a, Clustering::single_cluster(4)) == 0.0);
  CHECK(nmi(Clustering::single_cluster(4), Clustering::single_cluster(4)) == 1.0);
  CHECK_THROWS(nmi(a, Clustering::single_cluster(3)));
}

TEST_CASE("nmi agrees with the contingency-table formula") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint32_t> a(50), b(50);
    for (std::size_t i = 0; i < 50; ++i) {
      a[i] = static_cast<std::uint32_t>(rng() % 4);
      b[i] = static_cast<std::uint32_t>(rng() % 6);
    }
    const double x = nmi(Clustering(a), Clustering(b));
    CHECK(x == doctest::Approx(nmi_oracle(a, b)).epsilon(1e-12));
    CHECK(x == doctest::Approx(nmi(Clustering(b), Clustering(a))).epsilon(1e-12));
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("modularity examples") {
  const auto e = cliques(4, 5);
  const Graph g(20, e);
  const auto truth = block_labels({5, 5, 5, 5});
  CHECK(modularity(g, truth) == doctest::Approx(0.75));
  const Graph two(6, cliques(2, 3));
  CHECK(modularity(two, labels({0, 0, 0, 1, 1, 1})) == doctest::Approx(0.5));
  CHECK(modularity(two, Clustering::single_cluster(6)) == doctest::Approx(0.0));
  CHECK_THROWS(modularity(Graph(4), Clustering::single_cluster(4)));
}

TEST_CASE("conductance examples") {
  const Graph g(20, cliques(4, 5));
  CHECK(conductance_sum(g, block_labels({5, 5, 5, 5})) == 0.0);
  auto e = cliques(2, 3);
  e.emplace_back(2, 3);
  const Graph bridged(6, e);
  CHECK(conductance_sum(bridged, labels({0, 0, 0, 1, 1, 1})) == doctest::Approx(2.0 / 7));
  CHECK(conductance_sum(bridged, Clustering::single_cluster(6)) == 0.0);
}

TEST_CASE("sparsity") {
  const Graph g(20, cliques(4, 5));
  CHECK(sparsity(g, g) == 1.0);
  std::vector<VertexPair> all, some;
  for (Vertex v = 1; v <= 100; ++v) {
    all.emplace_back(0, v);
    if (v <= 57)
      some.emplace_back(0, v);
  }
  CHECK(sparsity(Graph(101, some), Graph(101, all)) == doctest::Approx(0.57));
  CHECK_THROWS_AS(sparsity(Graph(101, all), Graph(101, some)), std::logic_error);
}

TEST_CASE("union baseline of a clique layer") {
  const LayerSet layers({Graph(20, cliques(4, 5))});
  const auto truth = block_labels({5, 5, 5, 5});
  const auto r = union_baseline(layers, &truth, ClustererSpec{});
  REQUIRE(r.modularity);
  CHECK(*r.modularity == doctest::Approx(0.75));
  CHECK(r.conductance_sum == 0.0);
  CHECK(r.sparsity == 1.0);
}

TEST_CASE("GSBM-2 union modularity from first principles") {
  // Expected union edge counts by inclusion-exclusion over four layers.
  const double in_pairs = 4 * 125.0 * 124 / 2;
  const double out_pairs = 500.0 * 499 / 2 - in_pairs;
  const double in = in_pairs * (1 - std::pow(0.7, 4));
  const double out = out_pairs * (1 - std::pow(0.95, 4));
  const double expected = in / (in + out) - 4 * 0.25 * 0.25;
  CHECK(in / (in + out) == doctest::Approx(0.575).epsilon(1e-3));
  CHECK(expected == doctest::Approx(0.325).epsilon(2e-3));
  const auto data = generate(preset("GSBM-2"), 1);
  const auto r = union_baseline(data.layers, &data.truth, ClustererSpec{});
  REQUIRE(r.modularity);
  CHECK(*r.modularity == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("evaluate_graph") {
  const LayerSet layers({Graph(20, cliques(4, 5)), Graph(20, {})});
  const auto truth = block_labels({5, 5, 5, 5});
  const auto r = evaluate_graph(graph_union(layers), layers, &truth, ClustererSpec{});
  CHECK(r.clusters == 4);
  CHECK(*r.nmi == doctest::Approx(1.0));
  CHECK(*r.modularity == doctest::Approx(0.75));
  const auto empty = evaluate_graph(Graph(20), layers, nullptr, ClustererSpec{});
  CHECK_FALSE(empty.modularity);
  CHECK(empty.sparsity == 0.0);
}

}
