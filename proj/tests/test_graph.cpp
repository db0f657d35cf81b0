#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "signed_louvain/graph.hpp"
#include "signed_louvain/modularity.hpp"

using namespace signed_louvain;

namespace {

LoadedGraph load(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

std::string serialize(const SignedGraph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

void check_degree_sums(const SignedGraph& g) {
  for (auto layer : {Layer::positive, Layer::negative}) {
    double sum = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) sum += g.degree(layer, i);
    CHECK(sum == doctest::Approx(2.0 * g.total_weight(layer)).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("load star of negative edges") {
  const auto loaded = load("# star\n0 1 -1\n0 2 -1\n\n0 3 -1\n0 4 -1\n");
  const auto& g = loaded.graph;
  CHECK(g.node_count() == 5);
  CHECK(g.total_weight(Layer::negative) == 4.0);
  CHECK(g.total_weight(Layer::positive) == 0.0);
  CHECK(g.degree(Layer::negative, 0) == 4.0);
  for (NodeId i = 1; i < 5; ++i) CHECK(g.degree(Layer::negative, i) == 1.0);
  check_degree_sums(g);
}

TEST_CASE("empty stream gives empty graph") {
  const auto loaded = load("");
  CHECK(loaded.graph.node_count() == 0);
  CHECK(loaded.graph.total_weight() == 0.0);
}

TEST_CASE("duplicate pairs accumulate across orientations") {
  const auto loaded = load("a b 2\nb a 1\n");
  const auto& g = loaded.graph;
  CHECK(g.node_count() == 2);
  CHECK(g.total_weight(Layer::positive) == 3.0);
  REQUIRE(g.neighbors(Layer::positive, 0).size() == 1);
  CHECK(g.neighbors(Layer::positive, 0)[0].weight == 3.0);
  CHECK(loaded.labels.label(0) == "a");
  CHECK(loaded.labels.id("b") == 1);
}

TEST_CASE("opposite signs on one pair keep both layers") {
  const auto g = load("x y 1\nx y -1\n").graph;
  CHECK(g.total_weight(Layer::positive) == 1.0);
  CHECK(g.total_weight(Layer::negative) == 1.0);
  CHECK(g.pair_count() == 1);
}

TEST_CASE("self-loops and isolated node declarations") {
  const auto loaded = load("u u 2\nlonely\n");
  const auto& g = loaded.graph;
  CHECK(g.node_count() == 2);
  CHECK(g.self_loop(Layer::positive, 0) == 2.0);
  CHECK(g.degree(Layer::positive, 0) == 4.0);
  CHECK(g.total_weight(Layer::positive) == 2.0);
  CHECK(g.degree(Layer::positive, 1) == 0.0);
  // Dense oracle: row sum with the diagonal counted twice.
  const auto dense = oracle::dense_from_edges(2, {{0, 0, 2.0}});
  CHECK(oracle::row_sums(dense, dense.pos)[0] == 4.0);
}

TEST_CASE("single isolated node has zero degrees") {
  const auto g = load("solo\n").graph;
  CHECK(g.node_count() == 1);
  CHECK(g.degree(Layer::positive, 0) == 0.0);
  CHECK(g.degree(Layer::negative, 0) == 0.0);
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("non-numeric weight") {
    try {
      load("0 1 1\n# c\n0 2 abc\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("zero weight") {
    try {
      load("0 1 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("two fields") { CHECK_THROWS_AS(load("0 1\n"), ParseError); }
  SUBCASE("trailing field") { CHECK_THROWS_AS(load("0 1 1 7\n"), ParseError); }
}

TEST_CASE("aggregate star by leaves") {
  const auto g = SignedGraph::from_edges(5, oracle::star5());
  const std::vector<NodeId> part{0, 1, 1, 1, 1};
  const auto agg = aggregate(g, part);
  CHECK(agg.graph.node_count() == 2);
  CHECK(agg.graph.total_weight(Layer::negative) == 4.0);
  REQUIRE(agg.graph.neighbors(Layer::negative, 0).size() == 1);
  CHECK(agg.graph.neighbors(Layer::negative, 0)[0].weight == 4.0);
  CHECK(agg.graph.self_loop(Layer::negative, 0) == 0.0);
  CHECK(agg.graph.self_loop(Layer::negative, 1) == 0.0);
  CHECK(agg.community_index[0] == 0);
  CHECK(agg.community_index[1] == 1);
}

TEST_CASE("aggregate triangle into one node") {
  const std::vector<SignedEdge> tri{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  const auto g = SignedGraph::from_edges(3, tri);
  const std::vector<NodeId> part{7, 7, 7};
  const auto agg = aggregate(g, part);
  CHECK(agg.graph.node_count() == 1);
  CHECK(agg.graph.self_loop(Layer::positive, 0) == 3.0);
  CHECK(agg.graph.degree(Layer::positive, 0) == 6.0);
  CHECK(agg.graph.total_weight(Layer::positive) == 3.0);
  CHECK(agg.community_index[7] == 0);
  CHECK(agg.community_index[0] == kNoCommunity);
}

TEST_CASE("aggregate by singletons is the identity") {
  std::mt19937_64 rng(11);
  const auto edges = oracle::random_edges(rng, 9, 0.4);
  const auto g = SignedGraph::from_edges(9, edges);
  std::vector<NodeId> ids(9);
  for (NodeId i = 0; i < 9; ++i) ids[i] = i;
  const auto agg = aggregate(g, ids);
  CHECK(serialize(agg.graph) == serialize(g));
}

TEST_CASE("aggregate matches the dense quotient and preserves modularity") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const auto edges = oracle::random_edges(rng, n, 0.35);
    const auto g = SignedGraph::from_edges(n, edges);
    const std::size_t k = 1 + rng() % n;
    std::vector<NodeId> part(n);
    for (auto& c : part) c = static_cast<NodeId>(rng() % k);

    const auto agg = aggregate(g, part);
    std::vector<NodeId> compact(n);
    for (std::size_t i = 0; i < n; ++i) compact[i] = agg.node_to_aggregate[i];
    const auto expected = oracle::quotient(oracle::dense_from_edges(n, edges), compact, agg.graph.node_count());
    const auto actual = oracle::dense_from_graph(agg.graph);
    for (std::size_t x = 0; x < expected.pos.size(); ++x) {
      CHECK(actual.pos[x] == doctest::Approx(expected.pos[x]).epsilon(1e-12));
      CHECK(actual.neg[x] == doctest::Approx(expected.neg[x]).epsilon(1e-12));
    }
    CHECK(agg.graph.total_weight(Layer::positive) == doctest::Approx(g.total_weight(Layer::positive)).epsilon(1e-12));
    CHECK(agg.graph.total_weight(Layer::negative) == doctest::Approx(g.total_weight(Layer::negative)).epsilon(1e-12));
    check_degree_sums(agg.graph);

    std::vector<NodeId> singletons(agg.graph.node_count());
    for (NodeId i = 0; i < singletons.size(); ++i) singletons[i] = i;
    const Resolution res{0.5 + (rng() % 4) * 0.5, 0.5 + (rng() % 4) * 0.5};
    CHECK(std::abs(signed_modularity(g, part, res) - signed_modularity(agg.graph, singletons, res)) < 1e-9);
  }
}

TEST_CASE("serialization is idempotent after one round trip") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 15;
    auto edges = oracle::random_edges(rng, n, 0.3);
    for (auto& e : edges) e.weight *= 1.0 / 3.0;  // force rounding at 6 digits
    const auto first = serialize(SignedGraph::from_edges(n, edges));
    const auto second = serialize(load(first).graph);
    const auto third = serialize(load(second).graph);
    CHECK(second == third);
    check_degree_sums(load(first).graph);
  }
}

TEST_CASE("canonical serialization format") {
  const auto g = load("b a -2\na a 0.5\n").graph;
  CHECK(serialize(g) == "0\n1\n0 1 -2\n1 1 0.5\n");
}
