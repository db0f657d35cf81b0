#include <doctest.h>

#include <cmath>
#include <sstream>

#include "signed_louvain/ssbm.hpp"

using namespace signed_louvain;

namespace {

struct Counts {
  std::size_t positive = 0;
  std::size_t negative = 0;
};

Counts count_edges(const SsbmInstance& inst) {
  Counts c;
  const auto& g = inst.graph;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    CHECK(g.self_loop(Layer::positive, i) == 0.0);
    CHECK(g.self_loop(Layer::negative, i) == 0.0);
    for (const auto& nb : g.neighbors(Layer::positive, i)) {
      CHECK(inst.planted[i] == inst.planted[nb.node]);
      CHECK(nb.weight == 1.0);
      if (nb.node > i) ++c.positive;
    }
    for (const auto& nb : g.neighbors(Layer::negative, i)) {
      CHECK(inst.planted[i] != inst.planted[nb.node]);
      CHECK(nb.weight == 1.0);
      if (nb.node > i) ++c.negative;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("dense limit produces every eligible pair") {
  const auto inst = generate_ssbm({{30, 20, 10}, 1.0, 1.0, 5});
  const auto c = count_edges(inst);
  CHECK(c.positive == 670);
  CHECK(c.negative == 1100);
  CHECK(inst.planted.size() == 60);
  CHECK(inst.planted[0] == 0);
  CHECK(inst.planted[30] == 1);
  CHECK(inst.planted[59] == 2);
}

TEST_CASE("zero probabilities give isolated nodes") {
  const auto inst = generate_ssbm({{30, 20, 10}, 0.0, 0.0, 5});
  CHECK(inst.graph.node_count() == 60);
  CHECK(inst.graph.total_weight() == 0.0);
}

TEST_CASE("regeneration with the same seed is bit-identical") {
  const SsbmSpec spec{{12, 9, 4}, 0.37, 0.21, 77};
  const auto a = generate_ssbm(spec);
  const auto b = generate_ssbm(spec);
  std::ostringstream sa, sb;
  write_edge_list(sa, a.graph);
  write_edge_list(sb, b.graph);
  CHECK(sa.str() == sb.str());

  auto other = spec;
  other.seed = 78;
  std::ostringstream sc;
  write_edge_list(sc, generate_ssbm(other).graph);
  CHECK(sa.str() != sc.str());
}

TEST_CASE("edge indicators depend only on the seed and the pair") {
  // Growing the last block must not change any pair among the first nodes.
  const auto small = generate_ssbm({{10, 5}, 0.5, 0.5, 9});
  const auto large = generate_ssbm({{10, 8}, 0.5, 0.5, 9});
  for (NodeId i = 0; i < 15; ++i) {
    for (auto layer : {Layer::positive, Layer::negative}) {
      std::vector<NodeId> a, b;
      for (const auto& nb : small.graph.neighbors(layer, i)) a.push_back(nb.node);
      for (const auto& nb : large.graph.neighbors(layer, i))
        if (nb.node < 15) b.push_back(nb.node);
      CHECK(a == b);
    }
  }
}

TEST_CASE("mean positive edge count matches the binomial mean") {
  // 670 intra pairs at p = 0.5: mean 335, per-graph sd sqrt(167.5).
  constexpr int kSeeds = 10000;
  double sum = 0.0;
  for (int s = 0; s < kSeeds; ++s) {
    sum += static_cast<double>(count_edges(generate_ssbm({{30, 20, 10}, 0.5, 0.5, static_cast<std::uint64_t>(s)})).positive);
  }
  const double stderr_mean = std::sqrt(670 * 0.25) / std::sqrt(static_cast<double>(kSeeds));
  CHECK(std::abs(sum / kSeeds - 335.0) <= 3.0 * stderr_mean);
}

TEST_CASE("per-graph counts stay within four standard deviations") {
  const double p_in = 0.3, p_out = 0.15;
  const double mean_pos = 670 * p_in, sd_pos = std::sqrt(670 * p_in * (1 - p_in));
  const double mean_neg = 1100 * p_out, sd_neg = std::sqrt(1100 * p_out * (1 - p_out));
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto c = count_edges(generate_ssbm({{30, 20, 10}, p_in, p_out, s}));
    CHECK(std::abs(static_cast<double>(c.positive) - mean_pos) <= 4 * sd_pos);
    CHECK(std::abs(static_cast<double>(c.negative) - mean_neg) <= 4 * sd_neg);
  }
}

TEST_CASE("block model parameter validation") {
  CHECK_THROWS_AS(generate_ssbm({{1}, 0.5, 0.5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_ssbm({{3, 0}, 0.5, 0.5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_ssbm({{3, 3}, 1.5, 0.5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_ssbm({{3, 3}, 0.5, -0.1, 0}), std::invalid_argument);
  CHECK_NOTHROW(generate_ssbm({{2}, 0.5, 0.5, 0}));
}

TEST_CASE("pair draws are uniform") {
  int below_half = 0;
  for (NodeId i = 0; i < 200; ++i)
    for (NodeId j = i + 1; j < 200; ++j) {
      const double u = pair_uniform(3, i, j);
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      if (u < 0.5) ++below_half;
    }
  // 19900 draws: sd ~ 70.
  CHECK(std::abs(below_half - 9950) < 400);
}
