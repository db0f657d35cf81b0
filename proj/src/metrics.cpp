#include "signed_louvain/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "signed_louvain/engines.hpp"

namespace signed_louvain {

namespace {

double entropy(const std::vector<std::size_t>& counts, double n) {
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

template <class Visit>
void for_each_union_neighbor(const SignedGraph& graph, NodeId node, Visit&& visit) {
  for (const auto& nb : graph.neighbors(Layer::positive, node)) visit(nb.node);
  for (const auto& nb : graph.neighbors(Layer::negative, node)) visit(nb.node);
}

}  // namespace

double nmi(std::span<const CommunityId> first, std::span<const CommunityId> second) {
  if (first.size() != second.size()) throw std::invalid_argument("partitions cover different node sets");
  if (first.empty()) throw std::invalid_argument("NMI needs at least one node");

  const auto a = relabel(first);
  const auto b = relabel(second);
  const std::size_t ka = *std::max_element(a.begin(), a.end()) + 1;
  const std::size_t kb = *std::max_element(b.begin(), b.end()) + 1;

  std::vector<std::size_t> count_a(ka, 0), count_b(kb, 0);
  std::unordered_map<std::uint64_t, std::size_t> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++count_a[a[i]];
    ++count_b[b[i]];
    ++joint[(std::uint64_t{a[i]} << 32) | b[i]];
  }

  const double n = static_cast<double>(a.size());
  const double ha = entropy(count_a, n);
  const double hb = entropy(count_b, n);
  if (ka == 1 && kb == 1) return 1.0;
  if (ka == 1 || kb == 1) return 0.0;

  // Terms are summed in sorted order so that swapping the arguments gives
  // a bit-identical result.
  std::vector<double> terms;
  terms.reserve(joint.size());
  for (const auto& [key, c] : joint) {
    const double pab = static_cast<double>(c) / n;
    const double pa = static_cast<double>(count_a[key >> 32]) / n;
    const double pb = static_cast<double>(count_b[key & 0xffffffffULL]) / n;
    terms.push_back(pab * std::log(pab / (pa * pb)));
  }
  std::sort(terms.begin(), terms.end());
  double mutual = 0.0;
  for (double t : terms) mutual += t;
  return std::clamp(2.0 * mutual / (ha + hb), 0.0, 1.0);
}

GraphStats graph_stats(const SignedGraph& graph) {
  GraphStats stats;
  const std::size_t n = graph.node_count();
  stats.nodes = n;
  stats.edges = graph.pair_count();
  if (const double m = graph.total_weight(); m > 0.0) stats.pos_share = graph.total_weight(Layer::positive) / m;
  if (n > 1) stats.density = 2.0 * static_cast<double>(stats.edges) / (static_cast<double>(n) * (n - 1));
  if (n <= 1) return stats;

  // Components of the sign-blind union graph.
  std::vector<NodeId> component(n, kNoCommunity);
  std::vector<NodeId> queue;
  NodeId largest = 0;
  std::size_t largest_size = 0;
  NodeId next_component = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (component[root] != kNoCommunity) continue;
    const NodeId id = next_component++;
    component[root] = id;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for_each_union_neighbor(graph, queue[head], [&](NodeId v) {
        if (component[v] == kNoCommunity) {
          component[v] = id;
          queue.push_back(v);
        }
      });
    }
    if (queue.size() > largest_size) {
      largest_size = queue.size();
      largest = id;
    }
  }
  if (largest_size < 2) return stats;

  std::vector<std::size_t> dist(n);
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  double total = 0.0;
  std::size_t pairs = 0;
  for (NodeId source = 0; source < n; ++source) {
    if (component[source] != largest) continue;
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[source] = 0;
    queue.assign(1, source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      for_each_union_neighbor(graph, u, [&](NodeId v) {
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
          total += static_cast<double>(dist[v]);
          ++pairs;
          stats.diameter = std::max(stats.diameter, dist[v]);
        }
      });
    }
  }
  stats.avg_distance = total / static_cast<double>(pairs);
  return stats;
}

}  // namespace signed_louvain
