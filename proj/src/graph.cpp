#include "signed_louvain/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <utility>

namespace signed_louvain {

namespace {

using PairKey = std::pair<NodeId, NodeId>;

PairKey ordered(NodeId a, NodeId b) { return a <= b ? PairKey{a, b} : PairKey{b, a}; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", w);
  return buf;
}

}  // namespace

SignedGraph::LayerStorage SignedGraph::build_layer(std::size_t node_count,
                                                   std::span<const LayerEdge> edges) {
  LayerStorage layer;
  layer.offsets.assign(node_count + 1, 0);
  layer.loops.assign(node_count, 0.0);
  layer.degrees.assign(node_count, 0.0);

  std::vector<LayerEdge> sums;
  sums.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw std::out_of_range("edge endpoint out of range");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) throw std::invalid_argument("layer weight must be finite and non-negative");
    if (e.weight == 0.0) continue;
    const auto [u, v] = ordered(e.u, e.v);
    sums.push_back({u, v, e.weight});
  }
  std::stable_sort(sums.begin(), sums.end(), [](const LayerEdge& a, const LayerEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  std::size_t kept = 0;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (kept > 0 && sums[kept - 1].u == sums[k].u && sums[kept - 1].v == sums[k].v) {
      sums[kept - 1].weight += sums[k].weight;
    } else {
      sums[kept++] = sums[k];
    }
  }
  sums.resize(kept);

  for (const auto& [u, v, w] : sums) {
    layer.total += w;
    if (u == v) {
      layer.loops[u] += w;
      layer.degrees[u] += 2.0 * w;
    } else {
      ++layer.offsets[u + 1];
      ++layer.offsets[v + 1];
      layer.degrees[u] += w;
      layer.degrees[v] += w;
    }
  }
  for (std::size_t i = 0; i < node_count; ++i) layer.offsets[i + 1] += layer.offsets[i];

  layer.targets.resize(layer.offsets[node_count]);
  std::vector<std::size_t> cursor(layer.offsets.begin(), layer.offsets.end() - 1);
  // Lower neighbors first, then higher ones; both passes walk pairs in
  // ascending order, so every row ends up sorted by id.
  for (const auto& [u, v, w] : sums) {
    if (u != v) layer.targets[cursor[v]++] = {u, w};
  }
  for (const auto& [u, v, w] : sums) {
    if (u != v) layer.targets[cursor[u]++] = {v, w};
  }
  return layer;
}

SignedGraph SignedGraph::from_layers(std::size_t node_count, std::span<const LayerEdge> positive,
                                     std::span<const LayerEdge> negative) {
  SignedGraph g;
  g.node_count_ = node_count;
  g.layers_[0] = build_layer(node_count, positive);
  g.layers_[1] = build_layer(node_count, negative);
  return g;
}

SignedGraph SignedGraph::from_edges(std::size_t node_count, std::span<const SignedEdge> edges) {
  std::vector<LayerEdge> pos, neg;
  for (const auto& e : edges) {
    if (!std::isfinite(e.weight)) throw std::invalid_argument("edge weight must be finite");
    if (e.weight > 0.0) pos.push_back({e.u, e.v, e.weight});
    else if (e.weight < 0.0) neg.push_back({e.u, e.v, -e.weight});
  }
  return from_layers(node_count, pos, neg);
}

std::size_t SignedGraph::pair_count() const {
  std::size_t count = 0;
  for (NodeId i = 0; i < node_count_; ++i) {
    auto pos = neighbors(Layer::positive, i);
    auto neg = neighbors(Layer::negative, i);
    // Merge the two sorted rows, counting each j > i once.
    std::size_t a = 0, b = 0;
    while (a < pos.size() || b < neg.size()) {
      NodeId next;
      if (b == neg.size() || (a < pos.size() && pos[a].node < neg[b].node)) {
        next = pos[a++].node;
      } else if (a == pos.size() || neg[b].node < pos[a].node) {
        next = neg[b++].node;
      } else {
        next = pos[a].node;
        ++a;
        ++b;
      }
      if (next > i) ++count;
    }
    if (self_loop(Layer::positive, i) > 0.0 || self_loop(Layer::negative, i) > 0.0) ++count;
  }
  return count;
}

NodeId NodeLabelMap::intern(std::string_view label) {
  auto [it, inserted] = ids_.try_emplace(std::string(label), static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

NodeId NodeLabelMap::id(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) throw std::out_of_range("unknown node label: " + std::string(label));
  return it->second;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

LoadedGraph load_edge_list(std::istream& in) {
  LoadedGraph result;
  std::vector<SignedGraph::LayerEdge> pos, neg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::istringstream fields{std::string(body)};
    std::string u, v, w, extra;
    fields >> u >> v >> w >> extra;
    if (v.empty()) {
      result.labels.intern(u);
      continue;
    }
    if (w.empty()) throw ParseError(line_no, "expected `u v w`, got two fields");
    if (!extra.empty()) throw ParseError(line_no, "unexpected trailing field `" + extra + "`");

    double weight = 0.0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(weight)) {
      throw ParseError(line_no, "non-numeric weight `" + w + "`");
    }
    if (weight == 0.0) throw ParseError(line_no, "zero weight has no sign");

    const NodeId a = result.labels.intern(u);
    const NodeId b = result.labels.intern(v);
    if (weight > 0.0) pos.push_back({a, b, weight});
    else neg.push_back({a, b, -weight});
  }
  result.graph = SignedGraph::from_layers(result.labels.size(), pos, neg);
  return result;
}

LoadedGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const SignedGraph& graph) {
  // (i, j, sign, weight) with sign 0 = positive first.
  std::vector<std::tuple<NodeId, NodeId, int, double>> rows;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    for (const Layer layer : {Layer::positive, Layer::negative}) {
      const int sign = layer == Layer::positive ? 0 : 1;
      if (const double loop = graph.self_loop(layer, i); loop > 0.0) rows.emplace_back(i, i, sign, loop);
      for (const auto& nb : graph.neighbors(layer, i)) {
        if (nb.node > i) rows.emplace_back(i, nb.node, sign, nb.weight);
      }
    }
  }
  std::sort(rows.begin(), rows.end());
  for (NodeId i = 0; i < graph.node_count(); ++i) out << i << '\n';
  for (const auto& [i, j, sign, w] : rows) {
    out << i << ' ' << j << ' ' << (sign == 0 ? "" : "-") << format_weight(w) << '\n';
  }
}

Aggregation aggregate(const SignedGraph& graph, std::span<const NodeId> assignment) {
  const std::size_t n = graph.node_count();
  if (assignment.size() != n) throw std::invalid_argument("assignment does not cover every node");

  NodeId max_id = 0;
  for (NodeId c : assignment) max_id = std::max(max_id, c);

  Aggregation agg;
  agg.community_index.assign(n == 0 ? 0 : std::size_t{max_id} + 1, kNoCommunity);
  agg.node_to_aggregate.resize(n);
  NodeId next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& slot = agg.community_index[assignment[i]];
    if (slot == kNoCommunity) slot = next++;
    agg.node_to_aggregate[i] = slot;
  }

  std::vector<SignedGraph::LayerEdge> layers[2];
  for (const Layer layer : {Layer::positive, Layer::negative}) {
    auto& edges = layers[static_cast<int>(layer)];
    for (NodeId i = 0; i < n; ++i) {
      const NodeId ci = agg.node_to_aggregate[i];
      if (const double loop = graph.self_loop(layer, i); loop > 0.0) edges.push_back({ci, ci, loop});
      for (const auto& nb : graph.neighbors(layer, i)) {
        if (nb.node > i) edges.push_back({ci, agg.node_to_aggregate[nb.node], nb.weight});
      }
    }
  }
  agg.graph = SignedGraph::from_layers(next, layers[0], layers[1]);
  return agg;
}

}  // namespace signed_louvain
