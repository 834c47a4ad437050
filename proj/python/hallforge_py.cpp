#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hallforge/cli.hpp"
#include "hallforge/cohm.hpp"

namespace py = pybind11;
using namespace hallforge;

namespace {

py::dict table_dict(const InvariantTable& t) {
    py::dict out;
    for (const auto& [d, row] : t.mult) {
        py::dict r;
        for (const auto& [k, m] : row) r[py::int_(k)] = m;
        out[py::tuple(py::cast(d))] = r;
    }
    return out;
}

RunResult run(const std::string& command, const py::kwargs& opts) {
    RunConfig c;
    c.command = command;
    for (const auto& [key, value] : opts) {
        std::string k = py::cast<std::string>(key);
        auto str = [&] { return py::cast<std::string>(value); };
        auto num = [&] { return py::cast<int>(value); };
        if (k == "quiver") c.quiver = str();
        else if (k == "max_dim") c.max_dim = num();
        else if (k == "window") c.window = num();
        else if (k == "format") c.format = str();
        else if (k == "seed") c.seed = py::cast<uint64_t>(value);
        else if (k == "target") c.target = str();
        else if (k == "lhs") c.lhs = str();
        else if (k == "rhs") c.rhs = str();
        else if (k == "coha") c.coha = str();
        else if (k == "cohm") c.cohm = str();
        else if (k == "property") c.property = str();
        else if (k == "instances") c.instances = num();
        else if (k == "type") c.type = str();
        else if (k == "orient") c.orient = str();
        else if (k == "duality") c.duality = str();
        else if (k == "mults") c.mults = str();
        else if (k == "kind") c.pbw_kind = str();
        else if (k == "node_dim") c.node_dim = num();
        else if (k == "degree") c.degree = num();
        else throw py::key_error("unknown option " + k);
    }
    py::gil_scoped_release release;
    return dispatch(c);
}

}  // namespace

PYBIND11_MODULE(_hallforge, m) {
    m.doc() = "Cohomological Hall algebras and modules of quivers with duality";

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("status", &RunResult::status)
        .def_readonly("document", &RunResult::document)
        .def("__repr__", [](const RunResult& r) { return "<RunResult status=" + std::to_string(r.status) + ">"; });

    m.def("run", &run, py::arg("command"),
          "Run a CLI subcommand in process; options use the long flag names with underscores.");

    py::class_<Quiver>(m, "Quiver")
        .def_static("parse", &Quiver::parse)
        .def_static("load", &Quiver::load)
        .def_static("loop", &Quiver::loop, py::arg("m"), py::arg("s"), py::arg("tau"))
        .def("to_json", &Quiver::to_json)
        .def_property_readonly("num_nodes", &Quiver::num_nodes)
        .def_property_readonly("num_arrows", &Quiver::num_arrows)
        .def("euler_form", &Quiver::euler_form)
        .def("sd_euler_form", &Quiver::sd_euler_form)
        .def("admissible", &Quiver::admissible);

    m.def(
        "dt_invariants",
        [](const Quiver& q, int maxdim, int window) {
            py::gil_scoped_release release;
            InvariantTable t = dt_invariants(q, maxdim, window);
            py::gil_scoped_acquire acquire;
            return table_dict(t);
        },
        py::arg("quiver"), py::arg("maxdim"), py::arg("window") = 20,
        "{d: {k: multiplicity}} for the factor (-q^{1/2})^k x^d.");
    m.def(
        "ori_invariants",
        [](const Quiver& q, int maxdim, int window) {
            py::gil_scoped_release release;
            OriPrimitiveTable t = ori_dt_invariants(q, maxdim, window);
            py::gil_scoped_acquire acquire;
            return table_dict(t.dims);
        },
        py::arg("quiver"), py::arg("maxdim"), py::arg("window") = 20);

    py::register_exception<QuiverError>(m, "QuiverError", PyExc_ValueError);
}
