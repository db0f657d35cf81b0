#include "signed_louvain/hopgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace signed_louvain {

HopNeighborhood build_hop_neighbors(const SignedGraph& graph, Layer layer, unsigned radius) {
  if (radius == 0) throw std::invalid_argument("hop radius must be at least 1");
  const std::size_t n = graph.node_count();

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<NodeId> members;
  // seen[j] == source + 1 marks j as visited in the BFS rooted at source.
  std::vector<NodeId> seen(n, 0);
  std::vector<NodeId> frontier, next;

  for (NodeId source = 0; source < n; ++source) {
    const NodeId mark = source + 1;
    const std::size_t begin = members.size();
    seen[source] = mark;
    frontier.assign(1, source);
    for (unsigned depth = 0; depth < radius && !frontier.empty(); ++depth) {
      next.clear();
      for (NodeId u : frontier) {
        for (const auto& nb : graph.neighbors(layer, u)) {
          if (seen[nb.node] == mark) continue;
          seen[nb.node] = mark;
          next.push_back(nb.node);
          members.push_back(nb.node);
        }
      }
      frontier.swap(next);
    }
    std::sort(members.begin() + static_cast<std::ptrdiff_t>(begin), members.end());
    offsets[source + 1] = members.size();
  }
  return HopNeighborhood(radius, std::move(offsets), std::move(members));
}

}  // namespace signed_louvain
