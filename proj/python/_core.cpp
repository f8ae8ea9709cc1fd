#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "batchps/asymptotics.hpp"
#include "batchps/checks.hpp"
#include "batchps/inversion.hpp"
#include "batchps/simulator.hpp"
#include "batchps/table.hpp"

namespace py = pybind11;
using namespace bps;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sojourn-time tails of the batch-arrival processor-sharing queue";
    m.attr("__version__") = kVersion;

    // NumericalError subclasses translate through the base registration
    py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("cut_info", [](double rho, double q) {
        auto c = cut_info(validate_params(rho, q));
        return py::dict(py::arg("sigma_minus") = c.sigma_minus, py::arg("sigma_plus") = c.sigma_plus,
                        py::arg("pole") = c.pole);
    }, py::arg("rho"), py::arg("q"));

    m.def("lt_omega", [](double rho, double q, std::complex<double> s) {
        return lt_Omega(validate_params(rho, q), s).value;
    }, py::arg("rho"), py::arg("q"), py::arg("s"), "Laplace transform of the batch sojourn time");

    m.def("bromwich_ccdf", [](double rho, double q, std::vector<double> xs) {
        std::vector<double> out;
        py::gil_scoped_release nogil;
        for (auto& r : bromwich_ccdf(validate_params(rho, q), xs)) out.push_back(r.ccdf);
        return out;
    }, py::arg("rho"), py::arg("q"), py::arg("x"));

    m.def("tail_constants", [](double rho, double q) {
        auto t = tail_constants(validate_params(rho, q));
        return py::dict(py::arg("sigma_plus") = t.sigma_plus, py::arg("c_q") = t.c_q, py::arg("b_q") = t.b_q,
                        py::arg("eta1") = t.eta1, py::arg("eta2") = t.eta2, py::arg("eta3") = t.eta3,
                        py::arg("prefactor_Omega") = t.prefactor_Omega,
                        py::arg("prefactor_omega") = t.prefactor_omega);
    }, py::arg("rho"), py::arg("q"));

    m.def("tail_Omega", [](double rho, double q, double x) { return tail_Omega(validate_params(rho, q), x); },
          py::arg("rho"), py::arg("q"), py::arg("x"));
    m.def("tail_omega", [](double rho, double q, double x) { return tail_omega(validate_params(rho, q), x); },
          py::arg("rho"), py::arg("q"), py::arg("x"));

    m.def("stationary_occupancy", [](double rho, double q) { return stationary_oracle(validate_params(rho, q)); },
          py::arg("rho"), py::arg("q"));

    m.def("simulate", [](double rho, double q, long batches, std::uint64_t seed) {
        SimConfig c(validate_params(rho, q));
        c.n_batches = batches;
        c.seed = seed;
        SimResult r;
        {
            py::gil_scoped_release nogil;
            r = simulate(c);
        }
        std::vector<double> Omega, sizes;
        for (auto& b : r.batches) {
            Omega.push_back(b.batch_sojourn);
            sizes.push_back(b.size);
        }
        return py::dict(py::arg("Omega") = Omega, py::arg("size") = sizes, py::arg("occupancy") = r.occupancy);
    }, py::arg("rho"), py::arg("q"), py::arg("batches") = 100000, py::arg("seed") = 1);

    m.def("validate", [](double rho, double q) {
        py::list out;
        for (auto& r : run_suite(validation_suite(validate_params(rho, q)), {}))
            out.append(py::dict(py::arg("name") = r.name, py::arg("measured") = r.measured,
                                py::arg("tolerance") = r.tolerance, py::arg("passed") = r.pass()));
        return out;
    }, py::arg("rho"), py::arg("q"));
}
