#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pgap/audit.hpp"
#include "pgap/bounds.hpp"
#include "pgap/solver1d.hpp"
#include "pgap/solver_nd.hpp"
#include "pgap/sweep.hpp"

namespace py = pybind11;
using namespace pgap;

namespace {

py::array_t<double> field_array(const ScalarField& f) {
    const auto& d = f.domain;
    std::vector<py::ssize_t> shape;
    for (int a = 0; a < d.n_dim(); ++a) shape.push_back(d.resolution(a));
    py::array_t<double> out(shape);
    std::copy(f.values.begin(), f.values.end(), out.mutable_data());
    return out;
}

ScalarField field_from(const MeshedDomain& d, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    return ScalarField(d, std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "p-Laplacian eigenvalue ratio toolkit";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", error.ptr());
    py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
    py::register_exception<NoBoundAvailable>(m, "NoBoundAvailable", error.ptr());
    py::register_exception<BracketNotFound>(m, "BracketNotFound", error.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", error.ptr());
    py::register_exception<NumericalDegeneracy>(m, "NumericalDegeneracy", error.ptr());
    py::register_exception<InternalError>(m, "InternalError", error.ptr());

    py::class_<BoundConstants>(m, "BoundConstants")
        .def_readonly("m", &BoundConstants::m)
        .def_readonly("m_hat", &BoundConstants::m_hat)
        .def_readonly("k_hat", &BoundConstants::k_hat)
        .def_readonly("m_from_maximization", &BoundConstants::m_from_maximization)
        .def_property_readonly("regime", [](const BoundConstants& c) { return std::string(to_string(c.regime)); });

    py::class_<RatioBound>(m, "RatioBound")
        .def_readonly("bound_eq7", &RatioBound::ratio_bound_eq7)
        .def_readonly("bound_eq9", &RatioBound::ratio_bound_eq9)
        .def_readonly("best", &RatioBound::best);

    m.def("compute_m", &compute_m, py::arg("p"));
    m.def("constants_table", [](double p, int n) { return constants_table(ProblemParams::make(p, n)); },
          py::arg("p"), py::arg("n"));
    m.def("ratio_bound", [](double p, int n) { return ratio_bound(ProblemParams::make(p, n)); },
          py::arg("p"), py::arg("n"));
    m.def("gamma_bound", [](double p, int n, double lambda1) {
        return gamma_bound(ProblemParams::make(p, n), lambda1).value;
    }, py::arg("p"), py::arg("n"), py::arg("lambda1"));
    m.def("corollary4_check", [](double p, int n, double ratio) {
        const auto c = corollary4_check(ProblemParams::make(p, n), ratio);
        return py::make_tuple(c.lhs, c.rhs, c.satisfied);
    }, py::arg("p"), py::arg("n"), py::arg("ratio"));

    m.def("pi_p", &pi_p, py::arg("p"));
    m.def("ratio_1d", &ratio_1d, py::arg("p"));
    m.def("closed_form_eigenvalue_1d", &closed_form_eigenvalue_1d, py::arg("p"), py::arg("n"),
          py::arg("length") = 1.0);
    m.def("shoot_eigenvalue", [](double p, int n, double a, double b, double tol) {
        const auto mode = shoot_eigenvalue(Interval1D::make(a, b), p, n, tol);
        py::dict out;
        out["lambda"] = mode.lambda;
        out["zeros"] = mode.zeros;
        out["steps"] = mode.steps;
        out["u"] = py::array_t<double>(static_cast<py::ssize_t>(mode.u.size()), mode.u.data());
        return out;
    }, py::arg("p"), py::arg("n") = 1, py::arg("a") = 0.0, py::arg("b") = 1.0, py::arg("tol") = 1e-8);

    py::class_<MeshedDomain>(m, "MeshedDomain")
        .def(py::init([](const std::vector<std::array<double, 2>>& extents, const std::vector<int>& resolution) {
                 return MeshedDomain::make(extents, resolution);
             }),
             py::arg("extents"), py::arg("resolution"))
        .def_static("unit_box", &MeshedDomain::unit_box, py::arg("n_dim"), py::arg("grid"))
        .def_static("centered_unit_box", &MeshedDomain::centered_unit_box, py::arg("n_dim"), py::arg("grid"))
        .def_static("named", &make_named_domain, py::arg("name"), py::arg("grid"))
        .def_property_readonly("n_dim", &MeshedDomain::n_dim)
        .def_property_readonly("shape", [](const MeshedDomain& d) { return std::string(to_string(d.shape())); })
        .def_property_readonly("size", &MeshedDomain::size)
        .def("spacing", &MeshedDomain::spacing, py::arg("axis"))
        .def("__eq__", [](const MeshedDomain& a, const MeshedDomain& b) { return a == b; });

    m.def("rayleigh", [](const MeshedDomain& d, py::array_t<double, py::array::c_style | py::array::forcecast> u,
                         double p) { return rayleigh(field_from(d, u), p); },
          py::arg("domain"), py::arg("u"), py::arg("p"));
    m.def("rayleigh_gradient", [](const MeshedDomain& d,
                                  py::array_t<double, py::array::c_style | py::array::forcecast> u, double p) {
        return field_array(rayleigh_gradient(field_from(d, u), p));
    }, py::arg("domain"), py::arg("u"), py::arg("p"));

    py::class_<Eigenpair>(m, "Eigenpair")
        .def_readonly("lambda1", &Eigenpair::lambda)
        .def_readonly("residual", &Eigenpair::residual)
        .def_readonly("iterations", &Eigenpair::iterations)
        .def_property_readonly("domain", [](const Eigenpair& e) { return e.phi.domain; })
        .def_property_readonly("phi", [](const Eigenpair& e) { return field_array(e.phi); });

    m.def("principal_eigenpair", [](const MeshedDomain& d, double p, double tol, int max_iter) {
        py::gil_scoped_release release;
        return principal_eigenpair(d, p, tol, max_iter);
    }, py::arg("domain"), py::arg("p"), py::arg("tol") = 1e-8, py::arg("max_iter") = 20000);
    m.def("lambda1_exact_p2", &lambda1_exact_p2, py::arg("domain"));
    m.def("lambda2_exact_p2", &lambda2_exact_p2, py::arg("domain"));
    m.def("find_delta_star", [](const Eigenpair& e, double p, int axis) {
        return find_delta_star(e.phi, p, axis);
    }, py::arg("eig"), py::arg("p"), py::arg("axis") = 0);
    m.def("lambda2_upper_via_splitting", [](const Eigenpair& e, double p, int axis) {
        const auto up = lambda2_upper_via_splitting(e.phi.domain, p, e, axis);
        py::dict out;
        out["value"] = up.value;
        out["delta"] = up.delta;
        out["axis"] = up.axis;
        out["endpoint"] = std::string(to_string(up.endpoint));
        return out;
    }, py::arg("eig"), py::arg("p"), py::arg("axis") = 0);

    m.def("audit_json", [](const std::string& domain, double p, int grid, double tol, int max_iter) {
        InstanceOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        std::string text;
        {
            py::gil_scoped_release release;
            text = to_json(audit_instance(solve_instance(domain, p, grid, opts))).dump();
        }
        return text;
    }, py::arg("domain"), py::arg("p"), py::arg("grid") = 128, py::arg("tol") = 1e-8, py::arg("max_iter") = 20000);

    m.def("sweep_csv", [](const std::vector<double>& p_list, const std::vector<std::string>& domains, int grid,
                          int jobs) {
        SweepConfig config;
        config.p_list = p_list;
        config.domains = domains;
        config.grid = grid;
        config.jobs = jobs;
        std::string text;
        {
            py::gil_scoped_release release;
            text = sweep_csv(run_sweep(config));
        }
        return text;
    }, py::arg("p_list") = std::vector<double>{1.5, 2.0, 3.0},
       py::arg("domains") = std::vector<std::string>{"interval", "square"}, py::arg("grid") = 128,
       py::arg("jobs") = 1);
}
