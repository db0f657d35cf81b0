#pragma once

#include <span>
#include <vector>

#include "signed_louvain/graph.hpp"

namespace signed_louvain {

/// Per-node set of nodes reachable within `radius` unweighted hops in one
/// layer, self excluded. Each set is a sorted, duplicate-free id list.
class HopNeighborhood {
 public:
  HopNeighborhood() = default;
  HopNeighborhood(unsigned radius, std::vector<std::size_t> offsets, std::vector<NodeId> members)
      : radius_(radius), offsets_(std::move(offsets)), members_(std::move(members)) {}

  unsigned radius() const { return radius_; }
  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const NodeId> operator[](NodeId node) const {
    return {members_.data() + offsets_[node], members_.data() + offsets_[node + 1]};
  }
  std::size_t total_size() const { return members_.size(); }

 private:
  unsigned radius_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> members_;
};

/// Breadth-first search to depth `radius` from every node of `layer`.
/// Throws std::invalid_argument when `radius == 0`.
HopNeighborhood build_hop_neighbors(const SignedGraph& graph, Layer layer, unsigned radius);

}  // namespace signed_louvain
