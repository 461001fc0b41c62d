#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rootwalk/expectation.hpp"
#include "rootwalk/feynman_kac.hpp"
#include "rootwalk/ito.hpp"
#include "rootwalk/moments.hpp"
#include "rootwalk/pde.hpp"
#include "rootwalk/stopping.hpp"

namespace py = pybind11;
using namespace rootwalk;

namespace {

McOptions mc_options(std::int64_t paths, std::uint64_t seed, int workers) { return McOptions{paths, seed, workers}; }

AtomicMeasure measure(const std::vector<std::pair<double, cplx>>& atoms) {
  AtomicMeasure mu;
  for (const auto& [y, w] : atoms) mu.atoms.push_back({y, w});
  return mu;
}

}  // namespace

PYBIND11_MODULE(_rootwalk, m) {
  m.doc() = "Random walks on scaled roots of unity";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ArithmeticError);

  py::class_<WalkSpec>(m, "WalkSpec")
      .def(py::init<int, cplx, std::int64_t>(), py::arg("order"), py::arg("alpha"), py::arg("n"))
      .def_property_readonly("order", &WalkSpec::order)
      .def_property_readonly("alpha", &WalkSpec::alpha)
      .def_property_readonly("scale", &WalkSpec::scale)
      .def_property_readonly("root", &WalkSpec::root)
      .def("steps_until", &WalkSpec::steps_until)
      .def("__repr__", [](const WalkSpec& s) {
        return "WalkSpec(order=" + std::to_string(s.order()) + ", scale=" + std::to_string(s.scale()) + ")";
      });

  py::class_<PowerSeries>(m, "PowerSeries")
      .def_static("exponential", [](cplx c) { return PowerSeries::exponential(c); }, py::arg("c") = cplx{1.0, 0.0})
      .def_static("cosine", [](cplx c) { return PowerSeries::cosine(c); }, py::arg("c") = cplx{1.0, 0.0})
      .def_static("monomial", &PowerSeries::monomial, py::arg("degree"), py::arg("coefficient") = cplx{1.0, 0.0})
      .def_static("polynomial", [](const std::vector<cplx>& a) { return PowerSeries::polynomial(a); })
      .def_static("from_coefficients", [](const std::vector<cplx>& a) { return PowerSeries::from_coefficients(a); })
      .def_static("fourier", [](const std::vector<std::pair<double, cplx>>& atoms) {
        return fourier_of_measure(measure(atoms));
      })
      .def_property_readonly("size", &PowerSeries::size)
      .def_property_readonly("is_polynomial", &PowerSeries::is_polynomial)
      .def_property_readonly("type", &PowerSeries::type)
      .def("__call__", [](const PowerSeries& f, cplx z) { return evaluate(f, z); })
      .def("derivative", &derivative_series, py::arg("j"));

  py::class_<TimeFunction>(m, "TimeFunction")
      .def_static("constant", &TimeFunction::constant)
      .def_static("polynomial", &TimeFunction::polynomial)
      .def("__call__", [](const TimeFunction& f, double s) { return f(s); });

  py::enum_<EstimateKind>(m, "EstimateKind")
      .value("exact", EstimateKind::exact)
      .value("mc_confidence", EstimateKind::mc_confidence)
      .value("series_tail", EstimateKind::series_tail)
      .value("paper_remainder", EstimateKind::paper_remainder);

  py::class_<EstimateWithError>(m, "Estimate")
      .def_readonly("value", &EstimateWithError::value)
      .def_readonly("error", &EstimateWithError::error)
      .def_readonly("kind", &EstimateWithError::kind)
      .def_readonly("paths", &EstimateWithError::paths)
      .def_readonly("se_re", &EstimateWithError::se_re)
      .def_readonly("se_im", &EstimateWithError::se_im)
      .def_readonly("warnings", &EstimateWithError::warnings)
      .def("__repr__", [](const EstimateWithError& e) {
        return "Estimate(" + std::to_string(e.value.real()) + (e.value.imag() < 0 ? "" : "+") +
               std::to_string(e.value.imag()) + "j, error=" + std::to_string(e.error) + ")";
      });

  // walk and moments
  m.def("step_power_moment", &step_power_moment);
  m.def("exact_moments", &exact_moments, py::arg("spec"), py::arg("steps"), py::arg("kmax"));
  m.def("leading_term", &leading_term);
  m.def("remainder_bound", &remainder_bound);
  m.def("characteristic_function", &characteristic_function);
  m.def("characteristic_limit", &characteristic_limit);
  m.def("sample_path", [](const WalkSpec& spec, double t, std::uint64_t seed) {
    const auto p = sample_path(spec, t, seed);
    return std::vector<cplx>(p.partial_sums().begin(), p.partial_sums().end());
  });

  // expectations
  m.def("expect_exact",
        [](const WalkSpec& s, std::int64_t steps, const PowerSeries& f, cplx z, std::uint64_t budget) {
          return expect_exact(s, steps, f, z, budget);
        },
        py::arg("spec"), py::arg("steps"), py::arg("f"), py::arg("z") = cplx{}, py::arg("budget") = default_atom_budget());
  m.def("expect_mc",
        [](const WalkSpec& s, double t, const PowerSeries& f, cplx z, std::int64_t paths, std::uint64_t seed,
           int workers) { return expect_mc(s, t, f, z, mc_options(paths, seed, workers)); },
        py::arg("spec"), py::arg("t"), py::arg("f"), py::arg("z") = cplx{}, py::arg("paths") = 10000,
        py::arg("seed") = 1, py::arg("workers") = 1);
  m.def("limit_series", &limit_series, py::arg("spec"), py::arg("t"), py::arg("f"), py::arg("z") = cplx{});

  // Ito calculus
  m.def("ito_formula_check", [](const WalkSpec& spec, double t, std::uint64_t seed, const PowerSeries& g, cplx z) {
    const auto c = ito_formula_check(sample_path(spec, t, seed), g, z);
    return py::make_tuple(c.lhs, c.rhs, c.series_terms_used);
  });
  m.def("expected_ito_integral_exact",
        [](const WalkSpec& s, std::int64_t steps, const PowerSeries& g, cplx z, int k) {
          return expected_ito_integral_exact(s, steps, g, z, k);
        });

  // PDE
  py::class_<CauchyProblem>(m, "CauchyProblem")
      .def(py::init([](int order, cplx alpha, TimeFunction phi, PowerSeries initial) {
             CauchyProblem p;
             p.order = order;
             p.alpha = alpha;
             p.phi = std::move(phi);
             p.initial = std::move(initial);
             p.validate();
             return p;
           }),
           py::arg("order"), py::arg("alpha"), py::arg("phi"), py::arg("initial"));
  m.def("solve_series", &solve_series);
  m.def("effective_time", &effective_time);
  m.def("solve_probabilistic",
        [](const CauchyProblem& p, double t, cplx z, std::int64_t n, std::int64_t paths, std::uint64_t seed,
           int workers) { return solve_probabilistic(p, t, z, n, mc_options(paths, seed, workers)); },
        py::arg("problem"), py::arg("t"), py::arg("z"), py::arg("n"), py::arg("paths") = 10000, py::arg("seed") = 1,
        py::arg("workers") = 1);
  m.def("residual", &residual);

  // Feynman-Kac
  m.def("exp_functional_limit", &exp_functional_limit);
  m.def("exp_functional_mc",
        [](const WalkSpec& s, double t, const TimeFunction& a, std::int64_t paths, std::uint64_t seed, int workers) {
          return exp_functional_mc(s, t, a, mc_options(paths, seed, workers));
        },
        py::arg("spec"), py::arg("t"), py::arg("a"), py::arg("paths") = 10000, py::arg("seed") = 1,
        py::arg("workers") = 1);
  m.def("fk_solution_closed",
        [](const WalkSpec& s, double t, double x, const TimeFunction& A,
           const std::vector<std::pair<double, cplx>>& atoms) { return fk_solution_closed(s, t, x, A, measure(atoms)); });
  m.def("fk_residual", [](const WalkSpec& s, double t, double x, const TimeFunction& A,
                          const std::vector<std::pair<double, cplx>>& atoms) {
    return fk_residual(s, t, x, A, measure(atoms));
  });

  // exit times
  m.def("exit_statistics",
        [](const WalkSpec& s, double R, std::int64_t paths, std::uint64_t seed, int workers) {
          const auto st = exit_statistics(s, R, default_exit_horizon(s, R), mc_options(paths, seed, workers));
          py::dict d;
          d["samples"] = st.samples;
          d["mean"] = st.mean;
          d["se"] = st.se;
          d["median"] = st.median;
          d["truncated_fraction"] = st.truncated_fraction;
          d["lower_bound"] = st.bounds.lower;
          d["upper_bound"] = st.bounds.upper;
          return d;
        },
        py::arg("spec"), py::arg("R"), py::arg("paths") = 10000, py::arg("seed") = 1, py::arg("workers") = 1);
}
