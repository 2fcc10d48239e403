#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "harmless/gadgets.hpp"
#include "harmless/instance_io.hpp"
#include "harmless/kernel.hpp"
#include "harmless/serialize.hpp"
#include "harmless/solvers.hpp"
#include "harmless/sparsity.hpp"

namespace py = pybind11;
using namespace harmless;

namespace {

Graph make_graph(std::size_t n, const std::vector<Edge> &edges) { return Graph(n, edges); }

Instance make_instance(std::size_t n, const std::vector<Edge> &edges, std::vector<Threshold> thresholds, int k) {
  Instance inst{make_graph(n, edges), std::move(thresholds), k};
  inst.validate();
  return inst;
}

MccInstance make_mcc(int k, int n, const std::vector<std::tuple<int, int, int, int>> &edges) {
  MccInstance mcc;
  mcc.k = k;
  mcc.n = n;
  for (auto [i, s, j, t] : edges)
    mcc.edges.push_back({i, s, j, t});
  mcc.normalize();
  return mcc;
}

} // namespace

PYBIND11_MODULE(_harmless, m) {
  m.doc() = "Harmless Set toolkit core";
  m.attr("__version__") = version();

  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::num_vertices)
      .def_property_readonly("m", &Graph::num_edges)
      .def("edges", &Graph::edges)
      .def("neighbours", [](const Graph &g, Vertex v) {
        if (!g.contains(v))
          throw py::index_error("vertex id out of range");
        auto nb = g.neighbours(v);
        return std::vector<Vertex>(nb.begin(), nb.end());
      })
      .def("degree", &Graph::degree)
      .def("adjacent", &Graph::adjacent);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("n"), py::arg("edges"), py::arg("thresholds"), py::arg("k") = 0)
      .def_readonly("graph", &Instance::graph)
      .def_readonly("thresholds", &Instance::thresholds)
      .def_readwrite("k", &Instance::k)
      .def_property_readonly("n", &Instance::size)
      .def("to_text", [](const Instance &inst) {
        std::ostringstream out;
        save_instance(inst, out);
        return out.str();
      })
      .def_static("from_text", [](const std::string &text) {
        std::istringstream in(text);
        return load_instance(in);
      })
      .def("to_json", [](const Instance &inst) { return instance_to_json(inst).dump(); })
      .def(py::self == py::self);

  m.def("load_instance", &load_any_instance_file, py::arg("path"));
  m.def("is_harmless", [](const Instance &inst, const VertexSet &s) { return is_harmless(inst, s); }, py::arg("instance"), py::arg("s"));
  m.def("residual_budget", [](const Instance &inst, const VertexSet &s, Vertex u) { return residual_budget(inst, s, u); }, py::arg("instance"), py::arg("s"), py::arg("u"));
  m.def("cap_thresholds", &cap_thresholds, py::arg("instance"));
  m.def("compute_core", &compute_core, py::arg("instance"));
  m.def("x_avoiding_distance", [](const Graph &g, const VertexSet &x, Vertex u, Vertex v, int r) {
    int d = x_avoiding_distance(g, x, u, v, r);
    return d == kInfinity ? py::object(py::none()) : py::object(py::int_(d));
  }, py::arg("graph"), py::arg("x"), py::arg("u"), py::arg("v"), py::arg("r"));

  m.def("r_projection", [](const Graph &g, const VertexSet &x, Vertex u, int r) { return r_projection(g, x, u, r); }, py::arg("graph"), py::arg("x"), py::arg("u"), py::arg("r"));
  m.def("count_profiles", [](const Graph &g, const VertexSet &x, int r) { return count_profiles(g, x, r); }, py::arg("graph"), py::arg("x"), py::arg("r"));
  m.def("projection_closure",
        [](const Graph &g, const VertexSet &x, int r, std::size_t c) { return projection_closure(g, x, r, c); }, py::arg("graph"), py::arg("x"), py::arg("r"),
        py::arg("c_close") = 4);
  m.def("_domination_scattered", [](const Graph &g, const VertexSet &x, int r) {
    return to_json(domination_scattered(g, x, r)).dump();
  });
  m.def("_build_waterlily", [](const Graph &g, const VertexSet &a, int radius, int depth, std::size_t target,
                               std::size_t c_close, std::size_t s_max) {
    auto result = build_waterlily(g, a, {radius, depth, target, c_close, s_max});
    json doc = {{"report", to_json(result.report)}, {"waterlily", result ? to_json(*result.lily) : json(nullptr)}};
    return doc.dump();
  });

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("optimum", &SolveResult::optimum)
      .def_readonly("witness", &SolveResult::witness)
      .def("__repr__", [](const SolveResult &r) {
        return "SolveResult(optimum=" + std::to_string(r.optimum) + ")";
      });
  m.def("brute_force_max", [](const Instance &inst, std::size_t cap) {
    BruteForceOptions o;
    o.cap = cap;
    py::gil_scoped_release release;
    return brute_force_max(inst, o);
  }, py::arg("instance"), py::arg("cap") = 48);
  m.def("vc_solve", [](const Instance &inst, std::size_t cover_cap, unsigned workers) {
    py::gil_scoped_release release;
    return vc_solve(inst, {cover_cap, workers});
  }, py::arg("instance"), py::arg("cover_cap") = 22, py::arg("workers") = 1);
  m.def("greedy_vertex_cover", &greedy_vertex_cover, py::arg("graph"));

  m.def("_kernelize", [](const Instance &inst, std::optional<Threshold> p, bool plain) {
    KernelOptions options;
    options.p = p;
    auto result = kernelize(inst, options);
    json doc = {{"report", to_json(result.report)},
                {"decision", result.decision()},
                {"kernel", plain ? instance_to_json(to_plain_kernel(result.kernel)) : annotated_to_json(result.kernel)}};
    return doc.dump();
  });

  m.def("reduction_target_size", &reduction_target_size, py::arg("k"), py::arg("n"), py::arg("m"));
  m.def("_build_reduction", [](int k, int n, const std::vector<std::tuple<int, int, int, int>> &edges) {
    auto out = build_reduction(make_mcc(k, n, edges));
    return py::make_tuple(out.h, roles_to_json(out).dump());
  });
  m.def("construct_clique_solution", [](int k, int n, const std::vector<std::tuple<int, int, int, int>> &edges,
                                        const std::vector<int> &clique) {
    return construct_clique_solution(build_reduction(make_mcc(k, n, edges)), clique);
  }, py::arg("k"), py::arg("n"), py::arg("edges"), py::arg("clique"));
  m.def("_verify_reduction", [](int k, int n, const std::vector<std::tuple<int, int, int, int>> &edges,
                                std::size_t cap) { return to_json(verify_reduction(make_mcc(k, n, edges), cap)).dump(); });
  m.def("is_2_spider_forest", &is_2_spider_forest, py::arg("graph"));
}
