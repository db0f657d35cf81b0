#pragma once

#include <span>

#include "signed_louvain/graph.hpp"
#include "signed_louvain/modularity.hpp"

namespace signed_louvain {

/// Normalized mutual information 2 I(X;Y) / (H(X) + H(Y)), natural logs.
/// Two single-community partitions score 1; exactly one scores 0.
/// Throws std::invalid_argument if the partitions differ in size or are empty.
double nmi(std::span<const CommunityId> first, std::span<const CommunityId> second);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;       // distinct stored pairs over both layers
  double pos_share = 0.0;      // m+ / (m+ + m-)
  double density = 0.0;        // 2 edges / (n (n - 1))
  double avg_distance = 0.0;   // over connected pairs of the largest component
  std::size_t diameter = 0;
};

/// Distances ignore signs and weights and are measured in the largest
/// connected component of the union of both layers.
GraphStats graph_stats(const SignedGraph& graph);

}  // namespace signed_louvain
