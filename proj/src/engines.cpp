#include "signed_louvain/engines.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace signed_louvain {

namespace {

/// Calls `visit(c)` once for every community `node` may join, own community
/// excluded. `stamp` is scratch of size capacity; `token` must be fresh.
template <class Visit>
void for_each_candidate(const SignedGraph& graph, const LevelCandidates& candidates, const Partition& partition,
                        NodeId node, std::vector<std::uint64_t>& stamp, std::uint64_t token, Visit&& visit) {
  const CommunityId own = partition.community(node);
  stamp[own] = token;
  auto offer = [&](NodeId other) {
    const CommunityId c = partition.community(other);
    if (stamp[c] != token) {
      stamp[c] = token;
      visit(c);
    }
  };
  switch (candidates.strategy) {
    case Strategy::classic:
      for (const auto& nb : graph.neighbors(Layer::positive, node)) offer(nb.node);
      for (const auto& nb : graph.neighbors(Layer::negative, node)) offer(nb.node);
      break;
    case Strategy::hop:
      for (NodeId j : (*candidates.positive)[node]) offer(j);
      for (NodeId j : (*candidates.negative)[node]) offer(j);
      break;
    case Strategy::relaxed:
      for (CommunityId c : partition.communities()) {
        if (c != own) visit(c);
      }
      break;
  }
}

}  // namespace

std::string EngineConfig::engine_id() const {
  switch (strategy) {
    case Strategy::classic: return "classic";
    case Strategy::relaxed: return "relaxed";
    case Strategy::hop: return "hop(" + std::to_string(hop_pos) + "," + std::to_string(hop_neg) + ")";
  }
  return "unknown";
}

void EngineConfig::validate() const {
  resolution.validate();
  if (strategy == Strategy::hop && (hop_pos < 1 || hop_neg < 1)) {
    throw std::invalid_argument("hop strategy needs d+ >= 1 and d- >= 1");
  }
  if (!(min_gain > 0.0)) throw std::invalid_argument("min_gain must be positive");
  if (max_levels < 1) throw std::invalid_argument("max_levels must be positive");
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

LevelCandidates LevelCandidates::build(const SignedGraph& graph, const EngineConfig& config) {
  LevelCandidates out;
  out.strategy = config.strategy;
  if (config.strategy == Strategy::hop) {
    out.positive = build_hop_neighbors(graph, Layer::positive, config.hop_pos);
    out.negative = build_hop_neighbors(graph, Layer::negative, config.hop_neg);
  }
  return out;
}

std::vector<CommunityId> candidate_communities(const SignedGraph& graph, const LevelCandidates& candidates,
                                               const Partition& partition, NodeId node) {
  if (candidates.strategy == Strategy::hop && (!candidates.positive || !candidates.negative)) {
    throw std::invalid_argument("hop strategy requires hop neighborhoods");
  }
  std::vector<std::uint64_t> stamp(partition.capacity(), 0);
  std::vector<CommunityId> out{partition.community(node)};
  for_each_candidate(graph, candidates, partition, node, stamp, 1, [&](CommunityId c) { out.push_back(c); });
  std::sort(out.begin(), out.end());
  return out;
}

MoveStats move_phase(const SignedGraph& graph, Partition& partition, const LevelCandidates& candidates,
                     const Resolution& resolution, Rng& rng, double min_gain) {
  if (candidates.strategy == Strategy::hop && (!candidates.positive || !candidates.negative)) {
    throw std::invalid_argument("hop strategy requires hop neighborhoods");
  }
  const std::size_t n = graph.node_count();
  const NullModel null(graph, resolution);
  MoveStats stats;

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::vector<double> link(partition.capacity(), 0.0);  // w_{i,C} for the current node
  std::vector<CommunityId> touched;
  std::vector<std::uint64_t> stamp(partition.capacity(), 0);
  std::uint64_t token = 0;

  for (;;) {
    rng.shuffle(order);
    std::size_t sweep_moves = 0;
    for (const NodeId node : order) {
      const CommunityId own = partition.community(node);
      for (const auto& nb : graph.neighbors(Layer::positive, node)) {
        const CommunityId c = partition.community(nb.node);
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += nb.weight;
      }
      for (const auto& nb : graph.neighbors(Layer::negative, node)) {
        const CommunityId c = partition.community(nb.node);
        if (link[c] == 0.0) touched.push_back(c);
        link[c] -= nb.weight;
      }

      const double k_pos = graph.degree(Layer::positive, node);
      const double k_neg = graph.degree(Layer::negative, node);
      // Attraction of `node` to community c, with the node itself taken out.
      auto score = [&](CommunityId c) {
        const auto& s = partition.stats(c);
        double s_pos = s.pos_degree, s_neg = s.neg_degree;
        if (c == own) {
          s_pos -= k_pos;
          s_neg -= k_neg;
        }
        return link[c] - null.pos_coef * k_pos * s_pos + null.neg_coef * k_neg * s_neg;
      };
      const double stay = score(own);

      CommunityId best = own;
      double best_gain = 0.0;
      bool found = false;
      for_each_candidate(graph, candidates, partition, node, stamp, ++token, [&](CommunityId c) {
        const double gain = null.inv_m * (score(c) - stay);
        if (!found || gain > best_gain || (gain == best_gain && c < best)) {
          best = c;
          best_gain = gain;
          found = true;
        }
      });

      for (CommunityId c : touched) link[c] = 0.0;
      touched.clear();

      if (found && best_gain > min_gain) {
        partition.move(graph, node, best);
        ++sweep_moves;
        stats.gain += best_gain;
      }
    }
    stats.moves += sweep_moves;
    if (sweep_moves == 0) break;
  }
  return stats;
}

std::vector<CommunityId> relabel(std::span<const CommunityId> assignment) {
  std::vector<CommunityId> out(assignment.size());
  std::vector<CommunityId> fresh;
  CommunityId max_id = 0;
  for (CommunityId c : assignment) max_id = std::max(max_id, c);
  fresh.assign(assignment.empty() ? 0 : std::size_t{max_id} + 1, kFreshCommunity);
  CommunityId next = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto& slot = fresh[assignment[i]];
    if (slot == kFreshCommunity) slot = next++;
    out[i] = slot;
  }
  return out;
}

std::vector<CommunityId> flatten(std::span<const std::vector<CommunityId>> levels) {
  if (levels.empty()) throw std::invalid_argument("flatten needs at least one level");
  std::vector<CommunityId> current = levels.front();
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const auto& next = levels[k];
    for (auto& c : current) {
      if (c >= next.size()) {
        throw std::invalid_argument("level " + std::to_string(k) + " has " + std::to_string(next.size()) +
                                    " nodes but level " + std::to_string(k - 1) + " refers to node " +
                                    std::to_string(c));
      }
      c = next[c];
    }
  }
  return relabel(current);
}

RunReport optimize(const SignedGraph& graph, const EngineConfig& config) {
  config.validate();
  if (!(graph.total_weight() > 0.0)) throw EmptyNetworkError();

  RunReport report;
  report.engine = config.engine_id();
  report.seed = config.seed;

  const auto start = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  std::vector<std::vector<CommunityId>> levels;
  std::vector<std::vector<CommunityId>> snapshots;  // flat assignment after each level
  std::vector<CommunityId> flat(graph.node_count());
  std::iota(flat.begin(), flat.end(), CommunityId{0});

  SignedGraph owned;
  const SignedGraph* working = &graph;
  for (int level = 0; level < config.max_levels; ++level) {
    const LevelCandidates candidates = LevelCandidates::build(*working, config);
    Partition partition = Partition::singletons(*working);
    const MoveStats step = move_phase(*working, partition, candidates, config.resolution, rng, config.min_gain);
    if (step.moves == 0) break;
    report.moves += step.moves;

    Aggregation agg = aggregate(*working, partition.assignment());
    for (auto& c : flat) c = agg.node_to_aggregate[c];
    levels.push_back(std::move(agg.node_to_aggregate));
    snapshots.push_back(flat);
    owned = std::move(agg.graph);
    working = &owned;
    if (step.gain < config.min_gain) break;
  }
  report.partition = levels.empty() ? relabel(flat) : flatten(levels);
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  report.levels = static_cast<int>(levels.size());
  std::vector<CommunityId> initial(graph.node_count());
  std::iota(initial.begin(), initial.end(), CommunityId{0});
  report.level_modularity.push_back(signed_modularity(graph, initial, config.resolution));
  for (const auto& snap : snapshots) report.level_modularity.push_back(signed_modularity(graph, snap, config.resolution));
  report.modularity = signed_modularity(graph, report.partition, config.resolution);
  return report;
}

}  // namespace signed_louvain
