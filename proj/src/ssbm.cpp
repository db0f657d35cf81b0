#include "signed_louvain/ssbm.hpp"

#include <cmath>
#include <stdexcept>

namespace signed_louvain {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool valid_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void SsbmSpec::validate() const {
  std::size_t total = 0;
  for (std::size_t s : block_sizes) {
    if (s == 0) throw std::invalid_argument("block sizes must be positive");
    total += s;
  }
  if (total < 2) throw std::invalid_argument("SSBM needs at least two nodes");
  if (!valid_probability(p_in) || !valid_probability(p_out)) {
    throw std::invalid_argument("SSBM probabilities must lie in [0, 1]");
  }
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

double pair_uniform(std::uint64_t seed, NodeId i, NodeId j) {
  const std::uint64_t pair = (std::uint64_t{i} << 32) | j;
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(pair ^ 0x5851f42d4c957f2dULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SsbmInstance generate_ssbm(const SsbmSpec& spec) {
  spec.validate();
  SsbmInstance out;
  for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
    out.planted.insert(out.planted.end(), spec.block_sizes[b], static_cast<CommunityId>(b));
  }
  const auto n = static_cast<NodeId>(out.planted.size());

  std::vector<SignedEdge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const bool same = out.planted[i] == out.planted[j];
      const double p = same ? spec.p_in : spec.p_out;
      if (pair_uniform(spec.seed, i, j) < p) edges.push_back({i, j, same ? 1.0 : -1.0});
    }
  }
  out.graph = SignedGraph::from_edges(n, edges);
  return out;
}

}  // namespace signed_louvain
