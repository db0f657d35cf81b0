#pragma once

#include <limits>
#include <span>
#include <vector>

#include "signed_louvain/graph.hpp"

namespace signed_louvain {

using CommunityId = NodeId;

/// Target community meaning "a new community of its own".
inline constexpr CommunityId kFreshCommunity = std::numeric_limits<CommunityId>::max();

/// Resolution parameters on the positive and negative null models.
struct Resolution {
  double gamma_pos = 1.0;
  double gamma_neg = 1.0;

  /// Throws std::invalid_argument unless both are finite and non-negative.
  void validate() const;
};

/// Node to community assignment with per-community degree sums.
///
/// Community ids live in [0, capacity). Emptied communities are dropped from
/// the live set and their stats reset; `communities()` lists live ids in no
/// particular order.
class Partition {
 public:
  struct CommunityStats {
    double pos_degree = 0.0;  // sum of k+ over members
    double neg_degree = 0.0;  // sum of k- over members
    std::size_t size = 0;
  };

  static Partition singletons(const SignedGraph& graph);
  /// `assignment[i]` may use any ids; capacity becomes max(n, max id + 1).
  static Partition from_assignment(const SignedGraph& graph, std::span<const CommunityId> assignment);

  std::size_t node_count() const { return assignment_.size(); }
  std::size_t capacity() const { return stats_.size(); }
  CommunityId community(NodeId node) const { return assignment_[node]; }
  std::span<const CommunityId> assignment() const { return assignment_; }
  const CommunityStats& stats(CommunityId c) const { return stats_[c]; }
  bool is_live(CommunityId c) const { return c < stats_.size() && stats_[c].size > 0; }
  std::span<const CommunityId> communities() const { return live_; }
  std::size_t community_count() const { return live_.size(); }

  /// Moves `node` into community `target` (which may be empty). Throws
  /// std::out_of_range when `target >= capacity()`.
  void move(const SignedGraph& graph, NodeId node, CommunityId target);

 private:
  void add(const SignedGraph& graph, NodeId node, CommunityId c);
  void remove(const SignedGraph& graph, NodeId node, CommunityId c);

  std::vector<CommunityId> assignment_;
  std::vector<CommunityStats> stats_;
  std::vector<CommunityId> live_;
  std::vector<std::size_t> live_pos_;
};

/// Signed modularity over all ordered node pairs, self-pairs included. The
/// diagonal of A holds twice the self-loop weight. A null-model term whose
/// layer has zero weight is 0; Q is 0 on an empty network.
double signed_modularity(const SignedGraph& graph, std::span<const CommunityId> assignment,
                         const Resolution& resolution);
double signed_modularity(const SignedGraph& graph, const Partition& partition, const Resolution& resolution);

/// Classic (generalised) modularity. Throws std::invalid_argument if the
/// graph has any negative weight.
double unsigned_modularity(const SignedGraph& graph, std::span<const CommunityId> assignment, double gamma);

/// Change in signed modularity when `node` leaves its community for
/// `target` (an existing live community or kFreshCommunity). Zero when the
/// target is the node's own community. Throws std::out_of_range for ids that
/// name no live community.
double move_gain(const SignedGraph& graph, const Partition& partition, const Resolution& resolution,
                 NodeId node, CommunityId target);

/// Pairwise contribution (1/m)[A_ij - (γ+ k+_i k+_j / 2m+ - γ- k-_i k-_j / 2m-)]
/// of two distinct nodes sharing a community.
double pairwise_term(const SignedGraph& graph, const Resolution& resolution, NodeId i, NodeId j);

/// Precomputed coefficients of the null models for one graph.
struct NullModel {
  double inv_m = 0.0;     // 1/m, 0 when m = 0
  double pos_coef = 0.0;  // γ+ / 2m+, 0 when m+ = 0
  double neg_coef = 0.0;  // γ- / 2m-, 0 when m- = 0

  NullModel(const SignedGraph& graph, const Resolution& resolution);
};

}  // namespace signed_louvain
