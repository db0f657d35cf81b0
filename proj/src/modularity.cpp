#include "signed_louvain/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace signed_louvain {

void Resolution::validate() const {
  if (!std::isfinite(gamma_pos) || gamma_pos < 0.0 || !std::isfinite(gamma_neg) || gamma_neg < 0.0) {
    throw std::invalid_argument("resolution parameters must be finite and non-negative");
  }
}

NullModel::NullModel(const SignedGraph& graph, const Resolution& resolution) {
  const double m_pos = graph.total_weight(Layer::positive);
  const double m_neg = graph.total_weight(Layer::negative);
  if (m_pos + m_neg > 0.0) inv_m = 1.0 / (m_pos + m_neg);
  if (m_pos > 0.0) pos_coef = resolution.gamma_pos / (2.0 * m_pos);
  if (m_neg > 0.0) neg_coef = resolution.gamma_neg / (2.0 * m_neg);
}

Partition Partition::singletons(const SignedGraph& graph) {
  std::vector<CommunityId> ids(graph.node_count());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<CommunityId>(i);
  return from_assignment(graph, ids);
}

Partition Partition::from_assignment(const SignedGraph& graph, std::span<const CommunityId> assignment) {
  const std::size_t n = graph.node_count();
  if (assignment.size() != n) throw std::invalid_argument("assignment size does not match node count");
  std::size_t capacity = n;
  for (CommunityId c : assignment) {
    if (c == kFreshCommunity) throw std::invalid_argument("reserved community id in assignment");
    capacity = std::max<std::size_t>(capacity, std::size_t{c} + 1);
  }
  Partition p;
  p.assignment_.assign(assignment.begin(), assignment.end());
  p.stats_.assign(capacity, {});
  p.live_pos_.assign(capacity, 0);
  for (NodeId i = 0; i < n; ++i) p.add(graph, i, assignment[i]);
  return p;
}

void Partition::add(const SignedGraph& graph, NodeId node, CommunityId c) {
  auto& s = stats_[c];
  if (s.size == 0) {
    live_pos_[c] = live_.size();
    live_.push_back(c);
  }
  s.pos_degree += graph.degree(Layer::positive, node);
  s.neg_degree += graph.degree(Layer::negative, node);
  ++s.size;
  assignment_[node] = c;
}

void Partition::remove(const SignedGraph& graph, NodeId node, CommunityId c) {
  auto& s = stats_[c];
  --s.size;
  if (s.size == 0) {
    s = {};
    const std::size_t pos = live_pos_[c];
    live_[pos] = live_.back();
    live_pos_[live_[pos]] = pos;
    live_.pop_back();
  } else {
    s.pos_degree -= graph.degree(Layer::positive, node);
    s.neg_degree -= graph.degree(Layer::negative, node);
  }
}

void Partition::move(const SignedGraph& graph, NodeId node, CommunityId target) {
  if (target >= stats_.size()) throw std::out_of_range("community id out of range");
  const CommunityId from = assignment_[node];
  if (from == target) return;
  remove(graph, node, from);
  add(graph, node, target);
}

double signed_modularity(const SignedGraph& graph, std::span<const CommunityId> assignment,
                         const Resolution& resolution) {
  const std::size_t n = graph.node_count();
  if (assignment.size() != n) throw std::invalid_argument("assignment size does not match node count");
  const NullModel null(graph, resolution);
  if (null.inv_m == 0.0) return 0.0;

  double internal = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    const CommunityId ci = assignment[i];
    internal += 2.0 * (graph.self_loop(Layer::positive, i) - graph.self_loop(Layer::negative, i));
    for (const auto& nb : graph.neighbors(Layer::positive, i)) {
      if (assignment[nb.node] == ci) internal += nb.weight;
    }
    for (const auto& nb : graph.neighbors(Layer::negative, i)) {
      if (assignment[nb.node] == ci) internal -= nb.weight;
    }
  }

  CommunityId max_id = 0;
  for (CommunityId c : assignment) max_id = std::max(max_id, c);
  std::vector<double> pos_sum(n == 0 ? 0 : std::size_t{max_id} + 1, 0.0);
  std::vector<double> neg_sum(pos_sum.size(), 0.0);
  for (NodeId i = 0; i < n; ++i) {
    pos_sum[assignment[i]] += graph.degree(Layer::positive, i);
    neg_sum[assignment[i]] += graph.degree(Layer::negative, i);
  }
  double expected = 0.0;
  for (std::size_t c = 0; c < pos_sum.size(); ++c) {
    expected += null.pos_coef * pos_sum[c] * pos_sum[c] - null.neg_coef * neg_sum[c] * neg_sum[c];
  }
  return 0.5 * null.inv_m * (internal - expected);
}

double signed_modularity(const SignedGraph& graph, const Partition& partition, const Resolution& resolution) {
  return signed_modularity(graph, partition.assignment(), resolution);
}

double unsigned_modularity(const SignedGraph& graph, std::span<const CommunityId> assignment, double gamma) {
  if (graph.total_weight(Layer::negative) > 0.0) {
    throw std::invalid_argument("unsigned modularity requires a graph without negative edges");
  }
  return signed_modularity(graph, assignment, Resolution{gamma, 0.0});
}

double move_gain(const SignedGraph& graph, const Partition& partition, const Resolution& resolution,
                 NodeId node, CommunityId target) {
  if (node >= graph.node_count()) throw std::out_of_range("node id out of range");
  const CommunityId source = partition.community(node);
  if (target != kFreshCommunity && !partition.is_live(target)) {
    throw std::out_of_range("unknown community id " + std::to_string(target));
  }
  if (target == source) return 0.0;

  const NullModel null(graph, resolution);
  double w_target = 0.0;
  double w_source = 0.0;
  auto accumulate = [&](Layer layer, double sign) {
    for (const auto& nb : graph.neighbors(layer, node)) {
      const CommunityId c = partition.community(nb.node);
      if (c == target) w_target += sign * nb.weight;
      else if (c == source) w_source += sign * nb.weight;
    }
  };
  accumulate(Layer::positive, 1.0);
  accumulate(Layer::negative, -1.0);

  const double k_pos = graph.degree(Layer::positive, node);
  const double k_neg = graph.degree(Layer::negative, node);
  const auto& src = partition.stats(source);
  const double src_pos = src.pos_degree - k_pos;
  const double src_neg = src.neg_degree - k_neg;
  double dst_pos = 0.0, dst_neg = 0.0;
  if (target != kFreshCommunity) {
    dst_pos = partition.stats(target).pos_degree;
    dst_neg = partition.stats(target).neg_degree;
  }
  return null.inv_m * ((w_target - w_source) - null.pos_coef * k_pos * (dst_pos - src_pos) +
                       null.neg_coef * k_neg * (dst_neg - src_neg));
}

double pairwise_term(const SignedGraph& graph, const Resolution& resolution, NodeId i, NodeId j) {
  if (i == j) throw std::invalid_argument("pairwise term needs two distinct nodes");
  const NullModel null(graph, resolution);
  auto weight = [&](Layer layer) {
    const auto row = graph.neighbors(layer, i);
    const auto it = std::lower_bound(row.begin(), row.end(), j,
                                     [](const Neighbor& nb, NodeId id) { return nb.node < id; });
    return (it != row.end() && it->node == j) ? it->weight : 0.0;
  };
  const double a_ij = weight(Layer::positive) - weight(Layer::negative);
  return null.inv_m * (a_ij - (null.pos_coef * graph.degree(Layer::positive, i) * graph.degree(Layer::positive, j) -
                               null.neg_coef * graph.degree(Layer::negative, i) * graph.degree(Layer::negative, j)));
}

}  // namespace signed_louvain
