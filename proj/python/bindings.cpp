#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dbar/suites.hpp"

namespace py = pybind11;
using namespace dbar;

namespace {

// A parsed problem with its operator built once.
class Problem {
public:
    explicit Problem(const std::string& text, int boundary_quad)
        : spec_(parse_problem(text)), T_(spec_.form, spec_.domain, options(spec_, boundary_quad)) {}

    int dimension() const { return spec_.domain.dimension(); }
    std::string mode() const { return to_string(spec_.mode); }

    py::array_t<cplx> evaluate(py::array_t<cplx, py::array::c_style | py::array::forcecast> z) const {
        const auto n = static_cast<py::ssize_t>(dimension());
        if (z.ndim() == 1 && z.shape(0) == n) z = z.reshape({py::ssize_t{1}, n});
        if (z.ndim() != 2 || z.shape(1) != n) throw SpecError("points must have shape (m, " + std::to_string(n) + ")");
        const auto m = z.shape(0);
        py::array_t<cplx> out(m);
        auto in = z.unchecked<2>();
        auto res = out.mutable_unchecked<1>();
        for (py::ssize_t i = 0; i < m; ++i) res(i) = T_(std::span<const cplx>(in.data(i, 0), static_cast<std::size_t>(n)));
        return out;
    }

    std::string solution_json() const { return dump_json(poly_to_json(T_.exact_solution())); }

    py::tuple solve_grid(int N, int threads) const {
        const Grid grid = tensor_grid(spec_.domain, N > 0 ? N : spec_.grid);
        const FieldResult fr = solve_field(T_, grid, threads);
        const auto n = static_cast<std::size_t>(dimension());
        py::array_t<cplx> pts({static_cast<py::ssize_t>(grid.size()), static_cast<py::ssize_t>(n)});
        auto p = pts.mutable_unchecked<2>();
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto z = grid.point(k);
            for (std::size_t j = 0; j < n; ++j) p(static_cast<py::ssize_t>(k), static_cast<py::ssize_t>(j)) = z[j];
        }
        py::array_t<cplx> vals(static_cast<py::ssize_t>(grid.size()));
        std::copy(fr.field.values.begin(), fr.field.values.end(), vals.mutable_data());
        return py::make_tuple(pts, vals);
    }

private:
    static TOptions options(const ProblemSpec& s, int boundary_quad) {
        TOptions o;
        o.path = s.mode;
        o.area_m = s.quad;
        o.boundary_m = boundary_quad;
        if (s.boundary_margin) o.boundary_margin = *s.boundary_margin;
        return o;
    }

    ProblemSpec spec_;
    TOperator T_;
};

}  // namespace

PYBIND11_MODULE(_dbar, m) {
    m.doc() = "Product-domain dbar solver (C++ core)";

    auto spec_error = py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<NotClosedError>(m, "NotClosedError", spec_error.ptr());
    py::register_exception<NearBoundaryError>(m, "NearBoundaryError", PyExc_ArithmeticError);

    py::class_<Problem>(m, "Problem")
        .def(py::init<const std::string&, int>(), py::arg("spec_json"), py::arg("boundary_quad") = 256)
        .def_property_readonly("dimension", &Problem::dimension)
        .def_property_readonly("mode", &Problem::mode)
        .def("evaluate", &Problem::evaluate, py::arg("points"))
        .def("solution_json", &Problem::solution_json)
        .def("solve_grid", &Problem::solve_grid, py::arg("grid") = 0, py::arg("threads") = 1);

    m.def("verify_json", [](const std::string& name, int n, int trials, int points, std::uint64_t seed, int threads,
                            bool negative_control) {
        VerifyConfig c;
        c.n = n;
        c.trials = trials;
        c.points = points;
        c.seed = seed;
        c.threads = threads;
        c.negative_control = negative_control;
        py::gil_scoped_release release;
        return dump_json(run_verify_case(name, c));
    }, py::arg("name"), py::arg("n") = 2, py::arg("trials") = 10, py::arg("points") = 10, py::arg("seed") = 42,
          py::arg("threads") = 1, py::arg("negative_control") = false);

    m.def("verify_case_names", &verify_case_names);

    m.def("counterexample", [](int n, const std::vector<int>& I, int K, int threads) {
        std::vector<int> zero_based;
        for (int i : I) zero_based.push_back(i - 1);
        CounterexampleOptions o;
        o.threads = threads;
        CounterexampleReport rep;
        {
            py::gil_scoped_release release;
            rep = counterexample_run(n, SubsetIndex::from_elements(zero_based), K, o);
        }
        return py::make_tuple(counterexample_csv(rep), dump_json(counterexample_json(rep)));
    }, py::arg("n"), py::arg("I"), py::arg("K"), py::arg("threads") = 1);

    m.def("harmonic_number", &harmonic_number, py::arg("K"));
}
