#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dgbo/analysis.hpp"
#include "dgbo/duhamel.hpp"
#include "dgbo/evolve.hpp"
#include "dgbo/experiments.hpp"
#include "dgbo/frm.hpp"
#include "dgbo/init.hpp"
#include "dgbo/propagator.hpp"
#include "dgbo/spectral.hpp"

namespace py = pybind11;
using namespace dgbo;

namespace {

py::array_t<double> values_of(const Field& f) {
    return py::array_t<double>(f.values().size(), f.values().data());
}

py::dict criterion_dict(const CriterionResult& r) {
    py::dict d;
    d["id"] = r.id;
    d["name"] = r.name;
    d["value"] = r.value;
    d["tolerance"] = r.tolerance;
    d["relation"] = r.relation;
    d["pass"] = r.pass;
    d["details"] = r.details.dump();
    d["seconds"] = r.seconds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_dgbo, m) {
    m.doc() = "pseudospectral solver and estimate probes for dispersion-generalized Benjamin-Ono equations";

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, double>(), py::arg("n"), py::arg("L"))
        .def_readonly("n", &Grid::n)
        .def_readonly("L", &Grid::L)
        .def("xs", &Grid::xs)
        .def("ks", &Grid::ks)
        .def("__repr__", [](const Grid& g) { return "Grid(n=" + std::to_string(g.n) + ", L=" + std::to_string(g.L) + ")"; });

    py::class_<Field>(m, "Field")
        .def_static("from_values", [](const Grid& g, std::vector<double> v) { return Field::from_values(g, std::move(v)); })
        .def_static("zeros", &Field::zeros)
        .def_property_readonly("grid", &Field::grid)
        .def_property_readonly("values", &values_of)
        .def("max_abs", &Field::max_abs)
        .def("resample", &Field::resample)
        .def("__len__", &Field::size);

    py::class_<EquationParams>(m, "EquationParams")
        .def(py::init([](double alpha, int k, double mu) {
                 EquationParams p{alpha, k, mu};
                 p.validate();
                 return p;
             }),
             py::arg("alpha") = 2.0, py::arg("k") = 4, py::arg("mu") = 1.0)
        .def_readonly("alpha", &EquationParams::alpha)
        .def_readonly("k", &EquationParams::k)
        .def_readonly("mu", &EquationParams::mu);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](double dt, double t_end, bool adapt, int diagnostics_every) {
                 SolverConfig c;
                 c.dt = dt;
                 c.t_end = t_end;
                 c.adapt = adapt;
                 c.diagnostics_every = diagnostics_every;
                 c.validate();
                 return c;
             }),
             py::arg("dt") = 1e-3, py::arg("t_end") = 1.0, py::arg("adapt") = false, py::arg("diagnostics_every") = 1)
        .def_readonly("dt", &SolverConfig::dt)
        .def_readonly("t_end", &SolverConfig::t_end);

    m.def("gaussian", &gaussian, py::arg("grid"), py::arg("amplitude"), py::arg("width") = 1.0, py::arg("center") = -1.0);
    m.def("random_hs", &random_hs, py::arg("grid"), py::arg("s"), py::arg("rms"), py::arg("seed"),
          py::arg("max_mode"), py::arg("delta") = 0.01);

    m.def("fractional_derivative", &fractional_derivative);
    m.def("hilbert", &hilbert);
    m.def("dealias_cutoff", &dealias_cutoff);
    m.def("mass", &mass);
    m.def("energy", [](const Field& f, const EquationParams& p) { return energy(f, p); });
    m.def("l2_norm", &l2_norm);
    m.def("free_evolve", py::overload_cast<const Field&, double, double>(&free_evolve));

    m.def("strichartz_gamma", [](double p, double q, double alpha) { return strichartz_gamma(p, q, alpha).gamma; });
    m.def("critical_index", &critical_index);
    m.def("scattering_exponents", &scattering_exponents);
    m.def("phase", &frm::phase);
    m.def("level_band_area", &frm::level_band_area);

    m.def(
        "run",
        [](const Field& u0, const EquationParams& p, const SolverConfig& cfg) {
            RunResult r;
            {
                py::gil_scoped_release nogil;
                r = run(u0, p, cfg);
            }
            py::list rows;
            for (const auto& d : r.diagnostics)
                rows.append(py::dict(py::arg("t") = d.t, py::arg("dt") = d.dt, py::arg("mass") = d.mass,
                                     py::arg("energy") = d.energy, py::arg("l2") = d.l2, py::arg("hs_crit") = d.hs_crit,
                                     py::arg("linf") = d.linf, py::arg("imag_residue") = d.imag_residue));
            return py::make_tuple(r.final_state.field, rows);
        },
        py::arg("u0"), py::arg("params"), py::arg("config"));

    m.def(
        "picard_update_norms",
        [](const Field& u0, const EquationParams& p, double T, int n_iter, int n_quad) {
            py::gil_scoped_release nogil;
            return picard_solve(u0, p, T, n_iter, n_quad).update_norms;
        },
        py::arg("u0"), py::arg("params"), py::arg("T"), py::arg("n_iter"), py::arg("n_quad"));

    py::register_exception<BlowupError>(m, "BlowupError", PyExc_RuntimeError);
    py::register_exception<NoContraction>(m, "NoContraction", PyExc_RuntimeError);

    m.def("acceptance_ids", []() {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& e : acceptance_suite()) out.emplace_back(e.id, e.name);
        return out;
    });
    m.def("run_criterion", [](int id) {
        for (const auto& e : acceptance_suite())
            if (e.id == id) {
                CriterionResult r;
                {
                    py::gil_scoped_release nogil;
                    r = e.run();
                }
                return criterion_dict(r);
            }
        throw py::value_error("no criterion with id " + std::to_string(id));
    });
}
