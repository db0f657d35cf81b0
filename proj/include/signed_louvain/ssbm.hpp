#pragma once

#include <cstdint>
#include <vector>

#include "signed_louvain/graph.hpp"
#include "signed_louvain/modularity.hpp"

namespace signed_louvain {

/// Signed stochastic block model: positive unit edges inside blocks with
/// probability p_in, negative unit edges across blocks with probability p_out.
struct SsbmSpec {
  std::vector<std::size_t> block_sizes;
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SsbmInstance {
  SignedGraph graph;
  std::vector<CommunityId> planted;
};

SsbmInstance generate_ssbm(const SsbmSpec& spec);

/// Deterministic seed derivation for experiment cells and repeated runs.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Uniform draw in [0, 1) that depends only on (seed, i, j) with i < j.
double pair_uniform(std::uint64_t seed, NodeId i, NodeId j);

}  // namespace signed_louvain
