#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coherence/channels.hpp"
#include "coherence/errors.hpp"
#include "coherence/io.hpp"
#include "coherence/measures.hpp"
#include "coherence/power.hpp"
#include "coherence/suites.hpp"

namespace py = pybind11;
using namespace coherence;

namespace {

using KrausList = std::vector<ComplexMatrix>;

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

DensityMatrix state(const ComplexMatrix& m) { return DensityMatrix(m); }
KrausChannel channel(const KrausList& k) { return KrausChannel(k); }

DecompositionSearchOptions search_options(int starts, int iterations) {
  DecompositionSearchOptions o;
  if (starts > 0) o.starts = starts;
  if (iterations > 0) o.iterations = iterations;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherence measures, NC channel classification and coherence-increasing power";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  // States are complex numpy matrices, channels are lists of Kraus matrices.
  m.def("dephase", [](const ComplexMatrix& rho) { return dephase(state(rho)).matrix(); }, py::arg("rho"));
  m.def("maximally_coherent", [](int d) { return maximally_coherent(d).density().matrix(); }, py::arg("d"));
  m.def("phi_plus", [] { return phi_plus().density().matrix(); });
  m.def("maximally_correlated_embed",
        [](const ComplexMatrix& rho) { return maximally_correlated_embed(state(rho)).matrix(); }, py::arg("rho"));
  m.def(
      "random_density",
      [](int d, int rank, std::uint64_t seed) {
        Rng rng(seed);
        return random_density(d, rank, rng).matrix();
      },
      py::arg("d"), py::arg("rank"), py::arg("seed"));

  m.def("c_r", [](const ComplexMatrix& rho) { return c_r(state(rho)); }, py::arg("rho"));
  m.def("c_l1", [](const ComplexMatrix& rho) { return c_l1(state(rho)); }, py::arg("rho"));
  m.def("c_tr", [](const ComplexMatrix& rho, std::uint64_t seed) { return c_tr(state(rho), {}, seed); },
        py::arg("rho"), py::arg("seed") = 0);
  m.def("c_f_qubit", [](const ComplexMatrix& rho) { return c_f_qubit(state(rho)); }, py::arg("rho"));
  m.def(
      "c_f",
      [](const ComplexMatrix& rho, std::uint64_t seed, int starts, int iterations) {
        Rng rng(seed);
        const FormationValue v = c_f(state(rho), search_options(starts, iterations), rng);
        return py::dict(py::arg("value") = v.value, py::arg("method") = v.method, py::arg("converged") = v.converged);
      },
      py::arg("rho"), py::arg("seed") = 0, py::arg("starts") = 0, py::arg("iterations") = 0);
  m.def("wootters_concurrence", [](const ComplexMatrix& rho) { return wootters_concurrence(state(rho)); },
        py::arg("rho"));
  m.def("e_f_two_qubit", [](const ComplexMatrix& rho) { return e_f_two_qubit(state(rho)); }, py::arg("rho"));

  m.def("identity_channel", [](int d) { return identity_channel(d).kraus(); }, py::arg("d"));
  m.def("dephasing_channel", [](int d) { return dephasing_channel(d).kraus(); }, py::arg("d"));
  m.def("hadamard_channel", [] { return hadamard_channel().kraus(); });
  m.def("lambda1", [](double t, double p, double x, double e) { return lambda1(t, p, x, e).kraus(); },
        py::arg("theta"), py::arg("phi"), py::arg("xi"), py::arg("eta"));
  m.def("lambda2", [](double t, double p, double x) { return lambda2(t, p, x).kraus(); }, py::arg("theta"),
        py::arg("phi"), py::arg("xi"));
  m.def("example_channel", [] { return example_channel().kraus(); });
  m.def(
      "random_nc_qubit",
      [](std::uint64_t seed) {
        Rng rng(seed);
        return random_nc_qubit(rng).kraus();
      },
      py::arg("seed"));

  m.def("apply", [](const KrausList& k, const ComplexMatrix& rho) { return apply(channel(k), state(rho)).matrix(); },
        py::arg("kraus"), py::arg("rho"));
  m.def(
      "validate_cptp",
      [](const KrausList& k, double tol) {
        const CptpVerdict v = validate_cptp(channel(k), tol);
        return py::dict(py::arg("valid") = v.valid, py::arg("deviation") = v.deviation);
      },
      py::arg("kraus"), py::arg("tol") = kCptpTolerance);
  m.def(
      "is_nc",
      [](const KrausList& k, double tol) {
        const NcVerdict v = is_nc(channel(k), tol);
        return py::dict(py::arg("nc") = v.nc, py::arg("witness") = v.witness,
                        py::arg("max_offdiagonal") = v.max_offdiagonal);
      },
      py::arg("kraus"), py::arg("tol") = kNcTolerance);
  m.def(
      "classify",
      [](const KrausList& k, std::uint64_t seed, int starts, double tol) {
        IcSearchOptions o;
        if (starts > 0) o.starts = starts;
        Rng rng(seed);
        return to_python(to_json(classify(channel(k), tol, o, rng)));
      },
      py::arg("kraus"), py::arg("seed") = 0, py::arg("starts") = 0, py::arg("tol") = 1e-9);

  m.def(
      "coherence_gain",
      [](const KrausList& k, const ComplexMatrix& rho, const std::string& measure) {
        return coherence_gain(channel(k), state(rho), parse_measure(measure)).gain;
      },
      py::arg("kraus"), py::arg("rho"), py::arg("measure") = "c_r");
  m.def(
      "estimate_power",
      [](const KrausList& k, const std::string& measure, std::uint64_t seed, int starts, int iterations) {
        PowerOptions o;
        if (starts >= 0) o.starts = starts;
        if (iterations > 0) o.iterations = iterations;
        o.gain.search_seed = seed;
        Rng rng(seed);
        return to_python(to_json(estimate_power(channel(k), parse_measure(measure), o, rng)));
      },
      py::arg("kraus"), py::arg("measure") = "c_r", py::arg("seed") = 0, py::arg("starts") = -1,
      py::arg("iterations") = 0);
  m.def(
      "superadditivity_demo",
      [](int grid, std::uint64_t seed) {
        DemoOptions o;
        o.grid = grid;
        o.seed = seed;
        return to_python(to_json(superadditivity_demo(o)));
      },
      py::arg("grid") = 360, py::arg("seed") = 0);
  m.def(
      "run_suite",
      [](const std::string& name, int trials, std::uint64_t seed) {
        return to_python(to_json(run_suite(name, trials > 0 ? trials : default_trials(name), seed)));
      },
      py::arg("name"), py::arg("trials") = 0, py::arg("seed") = 0);
}
