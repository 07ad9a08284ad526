#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "boltzsym/classification.hpp"
#include "boltzsym/determining.hpp"
#include "boltzsym/errors.hpp"
#include "boltzsym/grid.hpp"
#include "boltzsym/integrator.hpp"
#include "boltzsym/invariant.hpp"
#include "boltzsym/lie.hpp"
#include "boltzsym/series.hpp"
#include "boltzsym/source.hpp"
#include "boltzsym/transform.hpp"

namespace py = pybind11;
using namespace boltzsym;

namespace {

ConvolutionMethod parse_method(const std::string& s) {
  if (s == "direct") return ConvolutionMethod::direct;
  if (s == "fft") return ConvolutionMethod::fft;
  throw std::invalid_argument("method must be 'direct' or 'fft'");
}

IntegrationConfig make_config(double t0, double t1, double dt, std::size_t record_every, double blowup,
                              const std::string& method) {
  IntegrationConfig c;
  c.t0 = t0;
  c.t1 = t1;
  c.dt = dt;
  c.record_every = record_every;
  c.blowup_threshold = blowup;
  c.grid_method = parse_method(method);
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Series and grid solvers, symmetry checks and invariant solutions for the sourced BKW model";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<BlowUpError>(m, "BlowUpError", error);
  py::register_exception<SingularSourceError>(m, "SingularSourceError", error);
  py::register_exception<NotSeriesRepresentableError>(m, "NotSeriesRepresentableError", error);
  py::register_exception<DomainError>(m, "DomainError", error);
  py::register_exception<NoRealSolutionError>(m, "NoRealSolutionError", error);
  py::register_exception<AlgebraClosureError>(m, "AlgebraClosureError", error);
  py::register_exception<InconsistentResonanceError>(m, "InconsistentResonanceError", error);
  py::register_exception<InconsistentInitialValueError>(m, "InconsistentInitialValueError", error);
  py::register_exception<InsufficientDecayError>(m, "InsufficientDecayError", error);

  // series
  m.def("beta_weight", [](unsigned i, unsigned j) { return to_double(beta_weight(i, j)); });
  m.def("collision_convolve", [](const Coeffs& a, const Coeffs& b) { return collision_convolve(a, b); });
  m.def(
      "rhs_series", [](const Coeffs& a, const Coeffs& q) { return rhs_series(SeriesState{a, 0.0}, q); },
      py::arg("coeffs"), py::arg("q"));
  m.def("eval_series", [](const Coeffs& a, double x) { return eval_series(a, x); });
  m.def("bkw_coeffs", &bkw_coeffs, py::arg("order") = kDefaultTruncation);
  m.def("equilibrium_coeffs", &equilibrium_coeffs, py::arg("order") = kDefaultTruncation);

  // sources
  py::class_<SourceModel>(m, "Source")
      .def_static("zero", &SourceModel::zero)
      .def_static("row", &SourceModel::row, py::arg("k"), py::arg("beta") = 1.0, py::arg("gamma") = 0.0,
                  py::arg("phi") = Coeffs{})
      .def_static("custom", py::overload_cast<Coeffs>(&SourceModel::custom), py::arg("q"))
      .def_property_readonly("row_index", &SourceModel::row_index)
      .def("__call__", [](const SourceModel& s, double x, double t) { return q_value(s, x, t); })
      .def("series", &q_series, py::arg("t"), py::arg("n_max"))
      .def("__repr__", &SourceModel::describe);

  // integration
  m.def(
      "integrate_series",
      [](const Coeffs& a0, const SourceModel& src, double t0, double t1, double dt, std::size_t record_every,
         double blowup) {
        auto tr = integrate(SeriesState{a0, t0}, src, make_config(t0, t1, dt, record_every, blowup, "fft"));
        std::vector<Coeffs> states;
        for (auto& s : tr.states) states.push_back(std::move(s.coeffs));
        return py::make_tuple(tr.times, states);
      },
      py::arg("coeffs"), py::arg("source"), py::arg("t0"), py::arg("t1"), py::arg("dt") = kDefaultStep,
      py::arg("record_every") = 1, py::arg("blowup_threshold") = kDefaultBlowupThreshold);
  m.def(
      "integrate_grid",
      [](const std::vector<double>& v0, double x_max, const SourceModel& src, double t0, double t1, double dt,
         std::size_t record_every, double blowup, const std::string& method) {
        auto tr = integrate(GridState(x_max, v0, t0), src, make_config(t0, t1, dt, record_every, blowup, method));
        std::vector<std::vector<double>> states;
        for (auto& s : tr.states) states.push_back(s.values());
        return py::make_tuple(tr.times, states);
      },
      py::arg("values"), py::arg("x_max"), py::arg("source"), py::arg("t0"), py::arg("t1"),
      py::arg("dt") = kDefaultStep, py::arg("record_every") = 1,
      py::arg("blowup_threshold") = kDefaultBlowupThreshold, py::arg("method") = "fft");
  m.def(
      "collision_grid",
      [](const std::vector<double>& v, const std::string& method) { return collision_grid(v, parse_method(method)); },
      py::arg("values"), py::arg("method") = "fft");

  // symmetry algebra
  m.def("structure_constant_discrepancies", [] {
    std::vector<py::dict> out;
    for (const auto& d : lie::structure_constant_discrepancies()) {
      py::dict row;
      row["i"] = d.i;
      row["j"] = d.j;
      row["computed"] = std::vector<double>{to_double(d.computed[0]), to_double(d.computed[1]),
                                            to_double(d.computed[2]), to_double(d.computed[3])};
      row["printed"] = std::vector<double>{to_double(d.printed[0]), to_double(d.printed[1]),
                                           to_double(d.printed[2]), to_double(d.printed[3])};
      out.push_back(row);
    }
    return out;
  });
  m.def(
      "optimal_system_closure",
      [](double gamma) {
        std::vector<py::tuple> out;
        for (const auto& e : lie::optimal_system_table())
          out.push_back(py::make_tuple(e.index, e.basis_string(), lie::is_subalgebra(e.instantiate(gamma)).closed));
        return out;
      },
      py::arg("gamma") = 0.5);

  // classification and determining equations
  m.def(
      "verify_table2",
      [](double beta, double gamma, const Coeffs& phi) {
        std::vector<py::dict> out;
        for (const auto& c : verify_table2(beta, gamma, phi).checks) {
          py::dict row;
          row["row"] = c.row;
          row["generator"] = c.generator;
          row["max_residual"] = c.max_residual;
          row["pass"] = c.pass;
          out.push_back(row);
        }
        return out;
      },
      py::arg("beta") = 1.3, py::arg("gamma") = 2.0, py::arg("phi") = Coeffs{1.0, 1.0, 0.5});
  m.def(
      "verify_determining",
      [](const std::vector<int>& rows, std::uint64_t seed) {
        std::vector<py::dict> out;
        for (const auto& c : verify_determining(rows, seed).checks) {
          py::dict row;
          row["row"] = c.row;
          row["generator"] = c.generator;
          row["listed"] = c.listed;
          row["residual"] = c.residual;
          row["admitted"] = c.admitted;
          out.push_back(row);
        }
        return out;
      },
      py::arg("rows"), py::arg("seed") = 7);

  // invariant solutions
  m.def(
      "solve_invariant",
      [](const std::string& case_id, std::optional<double> r0, const std::map<std::size_t, double>& choices,
         double beta, double gamma, double alpha, const Coeffs& phi, std::size_t order) {
        CaseParams p;
        p.beta = beta;
        p.gamma = gamma;
        p.alpha = alpha;
        p.phi = phi;
        auto prof = solve_reduced_series(make_reduced_problem(parse_case(case_id), p, order), r0, choices, order);
        py::dict out;
        out["coeffs"] = prof.coeffs;
        out["resonances"] = prof.resonances;
        out["free_params"] = prof.free_params;
        return out;
      },
      py::arg("case"), py::arg("r0") = std::nullopt, py::arg("choices") = std::map<std::size_t, double>{},
      py::arg("beta") = 1.0, py::arg("gamma") = 1.0, py::arg("alpha") = 1.0, py::arg("phi") = Coeffs{},
      py::arg("order") = kDefaultTruncation);
  m.def("closed_form_C_quadratic", &closed_form_C_quadratic, py::arg("beta"));
  m.def("closed_form_C_power", &closed_form_C_power, py::arg("beta"), py::arg("gamma"));
  m.def("B_gamma", &B_gamma, py::arg("gamma"));

  // radial transform
  m.def(
      "forward_transform",
      [](const std::vector<double>& f, double v_max, double k_max, std::size_t n) {
        return forward_transform(RadialFunction{v_max, f}, k_max, n).values;
      },
      py::arg("values"), py::arg("v_max"), py::arg("k_max"), py::arg("n_points"));
  m.def(
      "inverse_transform",
      [](const std::vector<double>& phi, double k_max, double v_max, std::size_t n, const std::string& norm) {
        if (norm != "round-trip" && norm != "printed")
          throw std::invalid_argument("normalization must be 'round-trip' or 'printed'");
        return inverse_transform(RadialFunction{k_max, phi}, v_max, n,
                                 norm == "printed" ? InverseNormalization::printed : InverseNormalization::round_trip)
            .values;
      },
      py::arg("values"), py::arg("k_max"), py::arg("v_max"), py::arg("n_points"), py::arg("normalization") = "round-trip");
  m.def(
      "phi_of_x",
      [](const std::vector<double>& phi, double k_max, double x) { return phi_of_x(RadialFunction{k_max, phi}, x); },
      py::arg("values"), py::arg("k_max"), py::arg("x"));
  m.def("maxwellian", &maxwellian, py::arg("temperature"), py::arg("v"));
}
