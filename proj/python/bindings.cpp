#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rigidlab/bounds.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/linalg.hpp"
#include "rigidlab/optimizer.hpp"
#include "rigidlab/rigidity.hpp"

namespace py = pybind11;
using namespace rigidlab;

namespace {

std::vector<Edge> to_edges(const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) edges.push_back({i, j});
  return edges;
}

std::vector<std::pair<Index, Index>> edge_pairs(const Graph& g) {
  std::vector<std::pair<Index, Index>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.i, e.j);
  return out;
}

Framework make_framework(const Graph& g, const Matrix& positions) {
  return Framework(g, Configuration(positions));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rigidity spectra, algebraic connectivity bounds and a_d(G) estimation";
  m.attr("__version__") = RIGIDLAB_VERSION;

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<OutOfDomain>(m, "OutOfDomain", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](Index n, const std::vector<std::pair<Index, Index>>& edges) {
             return Graph(n, to_edges(edges));
           }),
           py::arg("n"), py::arg("edges") = std::vector<std::pair<Index, Index>>{})
      .def_property_readonly("n", &Graph::vertex_count)
      .def_property_readonly("edges", &edge_pairs)
      .def("degree", &Graph::degree)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.vertex_count()) +
               ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("path", &generate::path, py::arg("n"));
  m.def("cycle", &generate::cycle, py::arg("n"));
  m.def("complete", &generate::complete, py::arg("n"));
  m.def("complete_bipartite", &generate::complete_bipartite, py::arg("a"), py::arg("b"));
  m.def("erdos_renyi", &generate::erdos_renyi, py::arg("n"), py::arg("prob"), py::arg("seed"));

  m.def("laplacian", [](const Graph& g) { return laplacian(g).dense(); }, py::arg("graph"));
  m.def(
      "algebraic_connectivity",
      [](const Graph& g) {
        const AlgebraicConnectivity a = algebraic_connectivity(g);
        return py::make_tuple(a.value, a.fiedler);
      },
      py::arg("graph"), "Returns (lambda_2, Fiedler vector).");
  m.def(
      "eigh",
      [](const Matrix& a) {
        const Spectrum s = eigh(SymMatrix(a));
        return py::make_tuple(s.values, s.vectors);
      },
      py::arg("a"), "Symmetric eigendecomposition (ascending values, eigenvectors as columns).");

  py::class_<Framework>(m, "Framework")
      .def(py::init(&make_framework), py::arg("graph"), py::arg("positions"))
      .def_property_readonly("graph", &Framework::graph)
      .def_property_readonly("d", &Framework::dim)
      .def_property_readonly("n", &Framework::vertex_count)
      .def_property_readonly("m", &Framework::affine_dimension)
      .def_property_readonly("D", &Framework::trivial_dim)
      .def_property_readonly("positions",
                             [](const Framework& fw) { return fw.config().positions(); })
      .def_property_readonly("line_direction", &Framework::line_direction)
      .def("edge_direction", &Framework::edge_direction, py::arg("i"), py::arg("j"))
      .def("rotated", &Framework::rotated, py::arg("q"));

  m.def("rigidity_matrix", &rigidity_matrix, py::arg("framework"));
  m.def("stiffness_matrix", [](const Framework& fw) { return stiffness_matrix(fw).dense(); },
        py::arg("framework"));
  m.def("stiffness_spectrum",
        [](const Framework& fw) { return Vector(eigh(stiffness_matrix(fw)).values); },
        py::arg("framework"));
  m.def(
      "trivial_basis",
      [](const Framework& fw) {
        const TrivialBasis b = trivial_basis(fw);
        return as_columns(b.vectors, fw.dim() * fw.vertex_count());
      },
      py::arg("framework"), "Orthonormal trivial-motion basis as matrix columns.");
  m.def("rigidity_eigenvalue", py::overload_cast<const Framework&>(&rigidity_eigenvalue),
        py::arg("framework"));
  m.def("is_infinitesimally_rigid", &is_infinitesimally_rigid, py::arg("framework"),
        py::arg("tol") = kRigidityTolerance);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("name", &BoundReport::name)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("margin", &BoundReport::margin)
      .def_readonly("tol", &BoundReport::tol)
      .def_readonly("holds", &BoundReport::holds)
      .def_readonly("skipped", &BoundReport::skipped)
      .def_readonly("context", &BoundReport::context)
      .def("__repr__", [](const BoundReport& r) {
        return "BoundReport(" + r.name + ", lhs=" + std::to_string(r.lhs) +
               ", rhs=" + std::to_string(r.rhs) + ", holds=" + (r.holds ? "True" : "False") + ")";
      });

  m.def("lemma1_check", [](const Framework& fw) { return lemma1_check(fw); }, py::arg("framework"));
  m.def("lemma2_check",
        [](const Framework& fw, const Vector& x, const Vector& v) { return lemma2_check(fw, x, v); },
        py::arg("framework"), py::arg("x"), py::arg("v"));
  m.def("jordan_bound_check", [](const Framework& fw) { return jordan_bound_check(fw); },
        py::arg("framework"));
  m.def("theorem_check", [](const Framework& fw) { return theorem_check(fw); },
        py::arg("framework"));
  m.def("witness_verify", [](const Framework& fw) { return witness_verify(fw); },
        py::arg("framework"));
  m.def(
      "witness_rotation",
      [](const Framework& fw) {
        const WitnessRotation w = witness_rotation(fw);
        py::dict out;
        out["rotation"] = w.rotation;
        out["fiedler"] = w.fiedler;
        out["lifted"] = w.lifted;
        out["degenerate"] = w.degenerate;
        return out;
      },
      py::arg("framework"));
  m.def("ceiling_index", &ceiling_index, py::arg("d"), py::arg("m"));
  m.def(
      "lew_bounds",
      [](Index n, Index d) {
        const LewBounds b = lew_bounds(n, d);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("n"), py::arg("d"), "Returns (lower, upper) for a_d(K_n).");

  m.def("objective", &objective, py::arg("graph"), py::arg("p"), py::arg("d"));
  m.def(
      "estimate_ad",
      [](const Graph& g, Index d, int restarts, std::uint64_t seed, int max_iters,
         const std::string& gradient) {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.max_iters = max_iters;
        if (gradient == "fd")
          cfg.gradient = GradientMode::finite_difference;
        else if (gradient != "analytic")
          throw InvalidInput("gradient must be 'analytic' or 'fd'");
        const EstimateResult r = estimate_ad(g, d, cfg);
        py::list per_restart;
        for (const RestartTrace& t : r.restarts)
          per_restart.append(py::dict(py::arg("final_value") = t.final_value,
                                      py::arg("iterations") = t.iterations));
        py::dict out;
        out["best_value"] = r.best_value;
        out["best_configuration"] = r.best_config.positions();
        out["best_restart"] = r.best_restart;
        out["a_1"] = r.algebraic_connectivity;
        out["certificate"] = r.certificate;
        out["violation"] = r.violation;
        out["per_restart"] = per_restart;
        return out;
      },
      py::arg("graph"), py::arg("d"), py::arg("restarts") = 20, py::arg("seed") = 1,
      py::arg("max_iters") = 500, py::arg("gradient") = "analytic");
}
