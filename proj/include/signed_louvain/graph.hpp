#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace signed_louvain {

using NodeId = std::uint32_t;

enum class Layer : std::uint8_t { positive = 0, negative = 1 };

struct Neighbor {
  NodeId node;
  double weight;
};

/// One undirected edge before layer assignment. The sign of `weight` picks
/// the layer; `u == v` denotes a self-loop.
struct SignedEdge {
  NodeId u;
  NodeId v;
  double weight;
};

/// Two-layer weighted undirected graph in compressed (CSR) form.
///
/// Each layer stores strictly positive weights. Self-loops are held apart
/// from the adjacency lists and count twice toward a node's degree, so that
/// the sum of degrees in a layer is twice the layer's total weight.
/// Instances are immutable once built.
class SignedGraph {
 public:
  SignedGraph() = default;

  /// Builds a graph over `node_count` nodes. Repeated pairs accumulate per
  /// layer; zero weights are ignored.
  static SignedGraph from_edges(std::size_t node_count, std::span<const SignedEdge> edges);

  /// Builds a graph from per-layer weights that are already non-negative.
  /// Used by aggregation, where one pair may carry weight in both layers.
  struct LayerEdge {
    NodeId u;
    NodeId v;
    double weight;
  };
  static SignedGraph from_layers(std::size_t node_count, std::span<const LayerEdge> positive,
                                 std::span<const LayerEdge> negative);

  std::size_t node_count() const { return node_count_; }

  /// Off-diagonal neighbors of `node` in `layer`, sorted by id.
  std::span<const Neighbor> neighbors(Layer layer, NodeId node) const {
    const auto& l = layers_[index(layer)];
    return {l.targets.data() + l.offsets[node], l.targets.data() + l.offsets[node + 1]};
  }
  double self_loop(Layer layer, NodeId node) const { return layers_[index(layer)].loops[node]; }
  double degree(Layer layer, NodeId node) const { return layers_[index(layer)].degrees[node]; }
  std::span<const double> degrees(Layer layer) const { return layers_[index(layer)].degrees; }

  /// Total weight m± of a layer (each undirected pair and self-loop once).
  double total_weight(Layer layer) const { return layers_[index(layer)].total; }
  double total_weight() const { return layers_[0].total + layers_[1].total; }

  /// Number of distinct stored pairs, counting a pair present in both
  /// layers once. Self-loops count as pairs.
  std::size_t pair_count() const;

 private:
  struct LayerStorage {
    std::vector<std::size_t> offsets;
    std::vector<Neighbor> targets;
    std::vector<double> loops;
    std::vector<double> degrees;
    double total = 0.0;
  };

  static constexpr std::size_t index(Layer layer) { return static_cast<std::size_t>(layer); }
  static LayerStorage build_layer(std::size_t node_count, std::span<const LayerEdge> edges);

  std::size_t node_count_ = 0;
  LayerStorage layers_[2];
};

/// Dense bijection between external string labels and internal node ids.
class NodeLabelMap {
 public:
  /// Returns the id of `label`, inserting it with the next free id if new.
  NodeId intern(std::string_view label);
  const std::string& label(NodeId id) const { return labels_.at(id); }
  bool contains(std::string_view label) const { return ids_.contains(std::string(label)); }
  NodeId id(std::string_view label) const;
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> ids_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadedGraph {
  SignedGraph graph;
  NodeLabelMap labels;
};

/// Reads a `u v w` edge list. Lines starting with `#` and blank lines are
/// skipped; a line holding a single label declares a node.
LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list_file(const std::string& path);

/// Canonical text form: every node declared on its own line in id order,
/// then one `i j w` line per stored pair and layer with i <= j, sorted by
/// (i, j, sign), weights to 6 significant digits.
void write_edge_list(std::ostream& out, const SignedGraph& graph);

/// Quotient graph of `graph` under `assignment`. Communities are renumbered
/// densely in order of first appearance; `community_index` maps each
/// original community id to its new node id (or `kNoCommunity` when absent).
struct Aggregation {
  SignedGraph graph;
  std::vector<NodeId> community_index;
  std::vector<NodeId> node_to_aggregate;
};
inline constexpr NodeId kNoCommunity = static_cast<NodeId>(-1);

Aggregation aggregate(const SignedGraph& graph, std::span<const NodeId> assignment);

}  // namespace signed_louvain
