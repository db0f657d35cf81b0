#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "signed_louvain/graph.hpp"
#include "signed_louvain/hopgraph.hpp"
#include "signed_louvain/modularity.hpp"

namespace signed_louvain {

/// How a node picks the communities it may join during the move phase.
enum class Strategy {
  classic,  // communities of direct neighbors in either layer
  relaxed,  // every non-empty community
  hop,      // communities of nodes within d+ positive hops or d- negative hops
};

struct EngineConfig {
  Strategy strategy = Strategy::hop;
  unsigned hop_pos = 1;
  unsigned hop_neg = 2;
  Resolution resolution;
  std::uint64_t seed = 0;
  double min_gain = 1e-9;
  int max_levels = 64;

  static EngineConfig classic() { return of(Strategy::classic, 1, 1); }
  static EngineConfig relaxed() { return of(Strategy::relaxed, 1, 1); }
  static EngineConfig hop(unsigned d_pos, unsigned d_neg) { return of(Strategy::hop, d_pos, d_neg); }
  /// SignedLouvain defaults: one positive hop, two negative hops.
  static EngineConfig signed_default() { return hop(1, 2); }
  static EngineConfig signed_extended() { return hop(2, 2); }

  EngineConfig& with_seed(std::uint64_t s) { seed = s; return *this; }
  EngineConfig& with_resolution(Resolution r) { resolution = r; return *this; }

  /// "classic", "relaxed" or "hop(d+,d-)".
  std::string engine_id() const;
  void validate() const;

 private:
  static EngineConfig of(Strategy s, unsigned d_pos, unsigned d_neg) {
    EngineConfig c;
    c.strategy = s;
    c.hop_pos = d_pos;
    c.hop_neg = d_neg;
    return c;
  }
};

struct RunReport {
  std::string engine;
  std::uint64_t seed = 0;
  std::vector<CommunityId> partition;  // on original nodes, ids 0..k-1
  double modularity = 0.0;
  int levels = 0;
  std::size_t moves = 0;
  double wall_time_seconds = 0.0;
  /// Q of the flattened partition at the start and after every level.
  std::vector<double> level_modularity;
};

class EmptyNetworkError : public std::invalid_argument {
 public:
  EmptyNetworkError() : std::invalid_argument("empty network") {}
};

/// Seeded source for sweep orders. The bounded draw is defined in terms of
/// raw mt19937_64 output so shuffles do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t bound);
  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Candidate structure for one level: hop sets when the strategy needs them.
struct LevelCandidates {
  Strategy strategy = Strategy::classic;
  std::optional<HopNeighborhood> positive;
  std::optional<HopNeighborhood> negative;

  static LevelCandidates build(const SignedGraph& graph, const EngineConfig& config);
};

/// Communities `node` may join under the level's strategy, own community
/// included, sorted ascending.
std::vector<CommunityId> candidate_communities(const SignedGraph& graph, const LevelCandidates& candidates,
                                               const Partition& partition, NodeId node);

struct MoveStats {
  std::size_t moves = 0;
  double gain = 0.0;
};

/// Greedy local moving until a full sweep changes nothing. A node moves to
/// the eligible community with the largest gain when that gain exceeds
/// `min_gain`; equal gains go to the smaller community id.
MoveStats move_phase(const SignedGraph& graph, Partition& partition, const LevelCandidates& candidates,
                     const Resolution& resolution, Rng& rng, double min_gain);

/// Composes per-level assignments. Level k maps the nodes of level k's graph
/// onto the nodes of level k+1's graph. Result ids are relabeled 0..k-1 by
/// first appearance. Throws std::invalid_argument on size mismatch.
std::vector<CommunityId> flatten(std::span<const std::vector<CommunityId>> levels);

/// Relabels ids to 0..k-1 in order of first appearance.
std::vector<CommunityId> relabel(std::span<const CommunityId> assignment);

/// Multi-level move/aggregate optimization. Throws EmptyNetworkError when
/// the graph has no edge weight.
RunReport optimize(const SignedGraph& graph, const EngineConfig& config);

}  // namespace signed_louvain
