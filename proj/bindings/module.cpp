// Python bindings for the core operations: set construction, potential
// theory, the run pipeline and the verification suite.  Structured results
// cross the boundary as plain dicts (JSON round trip), so the Python view of
// a report is byte-for-byte the CLI's report document.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "finitegap/equilibrium.hpp"
#include "finitegap/errors.hpp"
#include "finitegap/interval_set.hpp"
#include "finitegap/json_io.hpp"
#include "finitegap/run.hpp"
#include "finitegap/verify.hpp"

namespace py = pybind11;
using namespace finitegap;

namespace {

using BandList = std::vector<std::pair<double, double>>;

IntervalSet set_from(const BandList& bands) {
  std::vector<Band> bs;
  bs.reserve(bands.size());
  for (const auto& [l, r] : bands) bs.push_back({l, r});
  return IntervalSet::from_bands(bs);
}

BandList bands_of(const IntervalSet& set) {
  BandList out;
  for (const auto& b : set.bands()) out.emplace_back(b.left, b.right);
  return out;
}

nlohmann::ordered_json to_json(const py::object& obj) {
  const auto dumped = py::module_::import("json").attr("dumps")(obj);
  return nlohmann::ordered_json::parse(py::cast<std::string>(dumped));
}

py::object from_json(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(py::str(j.dump()));
}

}  // namespace

PYBIND11_MODULE(_finitegap, m) {
  m.doc() =
      "Finite-gap and Cantor-type sets: logarithmic potential theory, "
      "spectral measures, Jacobi recurrence coefficients and asymptotic "
      "diagnostics.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const MissingInputError& e) {
      PyErr_SetString(PyExc_FileNotFoundError, e.what());
    } catch (const NumericalError& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    } catch (const Error& e) {  // validation and usage errors
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "cantor_bands",
      [](double length, double origin, const std::vector<double>& removed,
         int generation) {
        return bands_of(make_cantor({length, origin, removed}, generation));
      },
      py::arg("length"), py::arg("origin"), py::arg("removed"),
      py::arg("generation"),
      "Bands of a Cantor-type truncation: start from [origin, origin+length] "
      "and remove the middle fraction removed[j] from every band of "
      "generation j.");

  m.def(
      "total_length",
      [](const BandList& bands) { return total_length(set_from(bands)); },
      py::arg("bands"), "Total Lebesgue length of the bands.");

  m.def(
      "homogeneity",
      [](const BandList& bands) {
        const auto rep = homogeneity_eta(set_from(bands));
        py::dict d;
        d["eta"] = rep.eta;
        d["worst_x"] = rep.worst_x;
        d["worst_rho"] = rep.worst_rho;
        return d;
      },
      py::arg("bands"),
      "Homogeneity constant: the worst relative mass of the set in windows "
      "centered on the set, with the window center and radius attaining it.");

  m.def(
      "capacity",
      [](const BandList& bands, int order) {
        return equilibrium(set_from(bands), order).capacity;
      },
      py::arg("bands"), py::arg("order") = 128,
      "Logarithmic capacity of the band system.");

  m.def(
      "equilibrium_info",
      [](const BandList& bands, int order) {
        const auto eq = equilibrium(set_from(bands), order);
        py::dict d;
        d["capacity"] = eq.capacity;
        d["log_capacity"] = eq.log_capacity;
        d["band_measures"] = eq.band_measures;
        d["gap_zeros"] = eq.gap_zeros;
        d["frequencies"] = harmonic_frequencies(eq);
        return d;
      },
      py::arg("bands"), py::arg("order") = 128,
      "Capacity, per-band equilibrium measures, the critical points of the "
      "Green's function in the gaps, and the harmonic-measure frequency "
      "vector.");

  m.def(
      "green",
      [](const BandList& bands, std::complex<double> z, int order) {
        return green_infinity(equilibrium(set_from(bands), order), z);
      },
      py::arg("bands"), py::arg("z"), py::arg("order") = 128,
      "Green's function of the complement with pole at infinity.");

  m.def(
      "green_pair",
      [](const BandList& bands, std::complex<double> z, double w, int order) {
        return green_two_point(equilibrium(set_from(bands), order), z, w);
      },
      py::arg("bands"), py::arg("z"), py::arg("w"), py::arg("order") = 128,
      "Two-point Green's function G(z, w) for a real pole w off the bands.");

  m.def(
      "greens_sum",
      [](const BandList& bands, const std::vector<double>& points, int order) {
        return greens_sum(equilibrium(set_from(bands), order), points);
      },
      py::arg("bands"), py::arg("points"), py::arg("order") = 128,
      "Sum of G(x_j) over the points.");

  m.def(
      "carleson_sum",
      [](const BandList& bands, const std::vector<double>& points, int order) {
        return carleson_sum(equilibrium(set_from(bands), order), points);
      },
      py::arg("bands"), py::arg("points"), py::arg("order") = 128,
      "sup over l of the mutual interaction sum of G(x_j, x_l), j != l.");

  m.def(
      "run",
      [](const py::object& config) {
        const RunConfig cfg = parse_run_config(to_json(config));
        return from_json(run_pipeline(cfg).report);
      },
      py::arg("config"),
      "Full pipeline on a config dict (same schema as the CLI): equilibrium "
      "data, spectral measure, recurrence coefficients and asymptotic "
      "diagnostics, returned as the report document.");

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, int threads) {
        const auto results = run_suite(suite, seed, threads);
        return from_json(verify_report(results, suite, seed));
      },
      py::arg("suite") = "quick", py::arg("seed") = kDefaultSeed,
      py::arg("threads") = 1,
      "Runs the named verification suite and returns its report document.");

  m.attr("default_seed") = py::int_(kDefaultSeed);
  m.attr("run_config_schema") = kRunConfigSchema;
  m.attr("report_schema") = kRunReportSchema;
}
