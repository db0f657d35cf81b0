#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "signed_louvain/cli.hpp"
#include "signed_louvain/engines.hpp"
#include "signed_louvain/graph.hpp"
#include "signed_louvain/hopgraph.hpp"
#include "signed_louvain/metrics.hpp"
#include "signed_louvain/modularity.hpp"
#include "signed_louvain/ssbm.hpp"

namespace py = pybind11;
using namespace signed_louvain;

namespace {

using EdgeTuple = std::tuple<NodeId, NodeId, double>;

SignedGraph graph_from_tuples(std::size_t n, const std::vector<EdgeTuple>& edges) {
  std::vector<SignedEdge> out;
  out.reserve(edges.size());
  for (const auto& [u, v, w] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint outside node range");
    out.push_back({u, v, w});
  }
  return SignedGraph::from_edges(n, out);
}

py::tuple loaded_to_python(LoadedGraph loaded) {
  return py::make_tuple(std::move(loaded.graph), loaded.labels.labels());
}

EngineConfig make_config(const std::string& engine, std::optional<unsigned> dpos, std::optional<unsigned> dneg) {
  if (engine == "hop") return EngineConfig::hop(dpos.value_or(1), dneg.value_or(2));
  if (dpos || dneg) throw std::invalid_argument("dpos/dneg apply to the hop engine only");
  return cli::engine_from_name(engine);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Signed-network community detection (C++ core).";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EmptyNetworkError>(m, "EmptyNetworkError", PyExc_ValueError);

  py::enum_<Layer>(m, "Layer").value("positive", Layer::positive).value("negative", Layer::negative);

  py::class_<SignedGraph>(m, "SignedGraph")
      .def(py::init(&graph_from_tuples), py::arg("node_count"), py::arg("edges"),
           "Build from (u, v, weight) triples; the sign of the weight picks the layer.")
      .def_property_readonly("node_count", &SignedGraph::node_count)
      .def_property_readonly("pair_count", &SignedGraph::pair_count)
      .def(
          "total_weight",
          [](const SignedGraph& g, std::optional<Layer> layer) { return layer ? g.total_weight(*layer) : g.total_weight(); },
          py::arg("layer") = py::none())
      .def("degree", &SignedGraph::degree, py::arg("layer"), py::arg("node"))
      .def("self_loop", &SignedGraph::self_loop, py::arg("layer"), py::arg("node"))
      .def(
          "neighbors",
          [](const SignedGraph& g, Layer layer, NodeId node) {
            if (node >= g.node_count()) throw std::out_of_range("node out of range");
            std::vector<std::pair<NodeId, double>> out;
            for (const auto& nb : g.neighbors(layer, node)) out.emplace_back(nb.node, nb.weight);
            return out;
          },
          py::arg("layer"), py::arg("node"))
      .def("to_edge_list",
           [](const SignedGraph& g) {
             std::ostringstream out;
             write_edge_list(out, g);
             return out.str();
           })
      .def("__repr__", [](const SignedGraph& g) {
        return "<SignedGraph nodes=" + std::to_string(g.node_count()) + " m+=" + std::to_string(g.total_weight(Layer::positive)) +
               " m-=" + std::to_string(g.total_weight(Layer::negative)) + ">";
      });

  m.def(
      "parse_edge_list",
      [](const std::string& text) {
        std::istringstream in(text);
        return loaded_to_python(load_edge_list(in));
      },
      py::arg("text"), "Parse edge-list text. Returns (graph, labels).");
  m.def(
      "load_edge_list", [](const std::string& path) { return loaded_to_python(load_edge_list_file(path)); },
      py::arg("path"), "Read an edge-list file. Returns (graph, labels).");

  m.def(
      "signed_modularity",
      [](const SignedGraph& g, const std::vector<CommunityId>& partition, double gamma_pos, double gamma_neg) {
        if (partition.size() != g.node_count()) throw std::invalid_argument("partition size differs from node count");
        return signed_modularity(g, partition, {gamma_pos, gamma_neg});
      },
      py::arg("graph"), py::arg("partition"), py::arg("gamma_pos") = 1.0, py::arg("gamma_neg") = 1.0);

  m.def(
      "move_gain",
      [](const SignedGraph& g, const std::vector<CommunityId>& partition, NodeId node, CommunityId target,
         double gamma_pos, double gamma_neg) {
        if (partition.size() != g.node_count()) throw std::invalid_argument("partition size differs from node count");
        if (node >= g.node_count()) throw std::out_of_range("node out of range");
        return move_gain(g, Partition::from_assignment(g, partition), {gamma_pos, gamma_neg}, node, target);
      },
      py::arg("graph"), py::arg("partition"), py::arg("node"), py::arg("target"), py::arg("gamma_pos") = 1.0,
      py::arg("gamma_neg") = 1.0);

  m.def(
      "pairwise_term",
      [](const SignedGraph& g, NodeId i, NodeId j, double gamma_pos, double gamma_neg) {
        if (i >= g.node_count() || j >= g.node_count()) throw std::out_of_range("node out of range");
        return pairwise_term(g, {gamma_pos, gamma_neg}, i, j);
      },
      py::arg("graph"), py::arg("i"), py::arg("j"), py::arg("gamma_pos") = 1.0, py::arg("gamma_neg") = 1.0);

  m.def(
      "hop_neighbors",
      [](const SignedGraph& g, Layer layer, unsigned radius) {
        const auto hops = build_hop_neighbors(g, layer, radius);
        std::vector<std::vector<NodeId>> out(g.node_count());
        for (NodeId i = 0; i < g.node_count(); ++i) out[i].assign(hops[i].begin(), hops[i].end());
        return out;
      },
      py::arg("graph"), py::arg("layer"), py::arg("radius"));

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("engine", &RunReport::engine)
      .def_readonly("seed", &RunReport::seed)
      .def_readonly("partition", &RunReport::partition)
      .def_readonly("modularity", &RunReport::modularity)
      .def_readonly("levels", &RunReport::levels)
      .def_readonly("moves", &RunReport::moves)
      .def_readonly("wall_time_seconds", &RunReport::wall_time_seconds)
      .def_readonly("level_modularity", &RunReport::level_modularity)
      .def("__repr__", [](const RunReport& r) {
        return "<RunReport engine=" + r.engine + " Q=" + std::to_string(r.modularity) +
               " levels=" + std::to_string(r.levels) + ">";
      });

  m.def(
      "optimize",
      [](const SignedGraph& g, const std::string& engine, std::uint64_t seed, std::optional<unsigned> dpos,
         std::optional<unsigned> dneg, double gamma_pos, double gamma_neg, double min_gain, int max_levels) {
        EngineConfig config = make_config(engine, dpos, dneg);
        config.seed = seed;
        config.resolution = {gamma_pos, gamma_neg};
        config.min_gain = min_gain;
        config.max_levels = max_levels;
        py::gil_scoped_release release;
        return optimize(g, config);
      },
      py::arg("graph"), py::arg("engine") = "signed", py::arg("seed") = 0, py::arg("dpos") = py::none(),
      py::arg("dneg") = py::none(), py::arg("gamma_pos") = 1.0, py::arg("gamma_neg") = 1.0, py::arg("min_gain") = 1e-9,
      py::arg("max_levels") = 64,
      "Run one optimizer. engine: classic/L, relaxed/RL, signed/SLd, signed-ext/SLe or hop (with dpos, dneg).");

  m.def(
      "generate_ssbm",
      [](const std::vector<std::size_t>& sizes, double p_in, double p_out, std::uint64_t seed) {
        auto inst = generate_ssbm({sizes, p_in, p_out, seed});
        return py::make_tuple(std::move(inst.graph), inst.planted);
      },
      py::arg("sizes"), py::arg("p_in"), py::arg("p_out"), py::arg("seed") = 0,
      "Signed stochastic block model. Returns (graph, planted partition).");

  m.def(
      "nmi", [](const std::vector<CommunityId>& a, const std::vector<CommunityId>& b) { return nmi(a, b); },
      py::arg("first"), py::arg("second"));

  m.def(
      "graph_stats",
      [](const SignedGraph& g) {
        const auto s = graph_stats(g);
        py::dict d;
        d["nodes"] = s.nodes;
        d["edges"] = s.edges;
        d["pos_share"] = s.pos_share;
        d["density"] = s.density;
        d["avg_distance"] = s.avg_distance;
        d["diameter"] = s.diameter;
        return d;
      },
      py::arg("graph"));

  m.attr("__version__") = SIGNED_LOUVAIN_VERSION;
}
