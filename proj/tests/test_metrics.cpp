#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "signed_louvain/metrics.hpp"
#include "signed_louvain/ssbm.hpp"

using namespace signed_louvain;

using Labels = std::vector<CommunityId>;

TEST_CASE("nmi of identical partitions is one") {
  CHECK(nmi(Labels{0, 0, 1, 1, 2}, Labels{0, 0, 1, 1, 2}) == doctest::Approx(1.0));
  CHECK(nmi(Labels{3, 3, 3}, Labels{3, 3, 3}) == 1.0);
  CHECK(nmi(Labels{0}, Labels{0}) == 1.0);
  CHECK(nmi(Labels{0, 1, 2, 3}, Labels{0, 1, 2, 3}) == doctest::Approx(1.0));
}

TEST_CASE("nmi of a uniform contingency table is zero") {
  CHECK(nmi(Labels{0, 0, 1, 1}, Labels{0, 1, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("nmi degenerate conventions") {
  CHECK(nmi(Labels{0, 0, 0, 0}, Labels{0, 1, 0, 1}) == 0.0);
  CHECK(nmi(Labels{0, 1, 0, 1}, Labels{5, 5, 5, 5}) == 0.0);
  CHECK_THROWS_AS(nmi(Labels{0, 1}, Labels{0}), std::invalid_argument);
  CHECK_THROWS_AS(nmi(Labels{}, Labels{}), std::invalid_argument);
}

TEST_CASE("nmi against planted blocks with one node relabeled") {
  const auto planted = generate_ssbm({{30, 20, 10}, 0.0, 0.0, 0}).planted;
  auto moved = planted;
  moved[5] = 2;
  const double got = nmi(planted, moved);
  CHECK(std::abs(got - oracle::nmi(planted, moved)) < 1e-9);
  CHECK(got < 1.0);
  CHECK(got > 0.8);
}

TEST_CASE("nmi properties on random partitions") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    Labels a(n), b(n);
    const std::size_t ka = 1 + rng() % 6, kb = 1 + rng() % 6;
    for (auto& x : a) x = static_cast<CommunityId>(rng() % ka);
    for (auto& x : b) x = static_cast<CommunityId>(rng() % kb);
    const double v = nmi(a, b);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v == nmi(b, a));
    CHECK(std::abs(v - oracle::nmi(a, b)) < 1e-9);
    CHECK(nmi(a, a) == doctest::Approx(1.0));

    // Permute ids of one side.
    std::vector<CommunityId> perm(ka);
    for (CommunityId c = 0; c < ka; ++c) perm[c] = c + 100;
    std::shuffle(perm.begin(), perm.end(), rng);
    Labels pa(n);
    for (std::size_t i = 0; i < n; ++i) pa[i] = perm[a[i]];
    CHECK(nmi(pa, b) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("graph stats on the star") {
  const auto s = graph_stats(SignedGraph::from_edges(5, oracle::star5()));
  CHECK(s.nodes == 5);
  CHECK(s.edges == 4);
  CHECK(s.pos_share == 0.0);
  CHECK(s.density == doctest::Approx(0.4));
  CHECK(s.avg_distance == doctest::Approx(1.6));
  CHECK(s.diameter == 2);
}

TEST_CASE("graph stats on a positive triangle") {
  const auto s = graph_stats(SignedGraph::from_edges(3, std::vector<SignedEdge>{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
  CHECK(s.density == doctest::Approx(1.0));
  CHECK(s.diameter == 1);
  CHECK(s.avg_distance == doctest::Approx(1.0));
  CHECK(s.pos_share == 1.0);
}

TEST_CASE("graph stats degenerate graphs") {
  const auto empty = graph_stats(SignedGraph::from_edges(0, {}));
  CHECK(empty.nodes == 0);
  CHECK(empty.edges == 0);
  CHECK(empty.density == 0.0);
  CHECK(empty.avg_distance == 0.0);
  CHECK(empty.diameter == 0);
  const auto single = graph_stats(SignedGraph::from_edges(1, std::vector<SignedEdge>{{0, 0, 1.0}}));
  CHECK(single.avg_distance == 0.0);
  CHECK(single.density == 0.0);
}

TEST_CASE("graph stats use the largest component and sign-blind paths") {
  // Path 0+1-2+3 plus an isolated edge 4-5: largest component is the path.
  const std::vector<SignedEdge> e{{0, 1, 1}, {1, 2, -1}, {2, 3, 1}, {4, 5, 2}, {1, 2, 1}};
  const auto s = graph_stats(SignedGraph::from_edges(6, e));
  CHECK(s.edges == 4);
  CHECK(s.diameter == 3);
  // Ordered pairs on a 4-path: distances 1,2,3,1,2,1 twice -> 20 / 12.
  CHECK(s.avg_distance == doctest::Approx(10.0 / 6.0));
  CHECK(s.pos_share == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("diameter bounds average distance") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const auto s = graph_stats(SignedGraph::from_edges(n, oracle::random_edges(rng, n, 0.1)));
    if (s.diameter == 0) continue;
    CHECK(static_cast<double>(s.diameter) >= s.avg_distance);
    CHECK(s.avg_distance >= 1.0);
  }
}
