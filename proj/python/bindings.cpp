#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "windings/config.hpp"
#include "windings/experiments.hpp"
#include "windings/levy_angular.hpp"
#include "windings/report.hpp"
#include "windings/samplers.hpp"
#include "windings/stable_process.hpp"

namespace py = pybind11;
using namespace windings;

namespace {

template <class Draw>
std::vector<double> draws(std::size_t n, std::uint64_t seed, std::uint64_t stream, Draw draw) {
  RandomStream rng(RngSeed{seed, stream});
  std::vector<double> out(n);
  for (auto& x : out) x = draw(rng);
  return out;
}

py::dict path_dict(const PlanarPath& path) {
  py::dict d;
  d["times"] = path.times;
  d["points"] = path.points;
  d["theta"] = winding_series(path);
  d["clock"] = clock_series(path);
  d["alpha"] = path.alpha;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Windings of planar stable processes: constants, samplers, paths and experiment suites.";

  m.def("constants", [](double alpha) {
    const auto c = compute_constants(alpha);
    py::dict d;
    d["alpha"] = c.alpha;
    d["C_nu"] = c.C_nu;
    d["K"] = c.K;
    d["I"] = c.I;
    d["k"] = c.k;
    d["r"] = c.r;
    d["L_tilde"] = c.L_tilde;
    return d;
  }, py::arg("alpha"));

  m.def("angular_density", &angular_density, py::arg("alpha"), py::arg("phi"));
  m.def("characteristic_exponent", &characteristic_exponent, py::arg("alpha"), py::arg("u"));

  m.def("sample_positive_stable", [](double rho, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    py::gil_scoped_release nogil;
    return draws(n, seed, stream, [rho](RandomStream& r) { return sample_positive_stable(rho, r); });
  }, py::arg("rho"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

  m.def("sample_symmetric_stable", [](double alpha, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    py::gil_scoped_release nogil;
    return draws(n, seed, stream, [alpha](RandomStream& r) { return sample_symmetric_stable(alpha, r); });
  }, py::arg("alpha"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

  m.def("simulate_rho", [](double alpha, double horizon, double epsilon, std::size_t steps, std::uint64_t seed,
                           std::uint64_t stream) {
    py::gil_scoped_release nogil;
    RandomStream rng(RngSeed{seed, stream});
    return simulate_rho(alpha, horizon, epsilon, rng, steps);
  }, py::arg("alpha"), py::arg("horizon") = 1.0, py::arg("epsilon") = 1e-3, py::arg("steps") = 1,
     py::arg("seed") = 0, py::arg("stream") = 0);

  m.def("generate_path", [](double alpha, double horizon, double base_step, double angle_cap,
                            std::vector<ComplexPoint> centers, ComplexPoint start, std::uint64_t seed,
                            std::uint64_t stream) {
    PathConfig config;
    config.horizon = horizon;
    config.base_step = base_step;
    config.angle_cap = angle_cap;
    config.start = start;
    if (!centers.empty()) config.centers = std::move(centers);
    PlanarPath path;
    {
      py::gil_scoped_release nogil;
      RandomStream rng(RngSeed{seed, stream});
      path = generate_path(StableIndex(alpha), config, rng);
    }
    return path_dict(path);
  }, py::arg("alpha"), py::arg("horizon") = 1.0, py::arg("base_step") = 1e-2,
     py::arg("angle_cap") = PathConfig{}.angle_cap, py::arg("centers") = std::vector<ComplexPoint>{},
     py::arg("start") = ComplexPoint{1.0, 0.0}, py::arg("seed") = 0, py::arg("stream") = 0);

  m.def("integral_test", [](double alpha, double beta) {
    const auto v = integral_test(alpha, BoundaryFamily::bertrand(alpha, beta));
    return py::make_tuple(v.converges, v.method, v.log_exponent);
  }, py::arg("alpha"), py::arg("beta"));

  m.def("suite_names", &suite_names);

  m.def("run_suite", [](const std::string& name, const std::string& config_json) {
    const auto config = parse_config_text(config_json.empty() ? "{}" : config_json);
    py::gil_scoped_release nogil;
    return report_to_json(run_suite(name, config));
  }, py::arg("name"), py::arg("config_json") = "",
     "Runs one experiment suite and returns the report as JSON text.");

  m.def("format_report", [](const std::string& report_json) { return format_report(report_from_json(report_json)); },
        py::arg("report_json"));

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
