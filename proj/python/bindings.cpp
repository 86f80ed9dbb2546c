#include <optional>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdmstab/boundary.hpp"
#include "sdmstab/cli.hpp"
#include "sdmstab/polynomial.hpp"
#include "sdmstab/report.hpp"
#include "sdmstab/simulator.hpp"
#include "sdmstab/transfer.hpp"
#include "sdmstab/winding.hpp"

namespace py = pybind11;

namespace {

// Structured results cross the boundary as JSON text; the package wrapper
// turns them into dicts.
template <typename T>
std::string json_of(const T& value) {
  return sdm::dump_json(sdm::to_json(value), -1);
}

sdm::Poly poly_of(const std::vector<double>& coeffs) { return sdm::Poly(coeffs); }

std::vector<double> coeffs_of(const sdm::Poly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

sdm::InputSignal input_of(std::optional<double> dc, std::optional<double> sine_amp, double sine_period) {
  if (dc && sine_amp) throw std::invalid_argument("give either dc or sine_amp, not both");
  if (sine_amp) return sdm::SineInput{*sine_amp, sine_period};
  return sdm::DcInput{dc.value_or(0.0)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stability analysis and simulation of cascaded one-bit sigma-delta modulators.";
  m.attr("__version__") = SDMSTAB_VERSION;

  m.def("binom_power", [](int n, double r) { return coeffs_of(sdm::binom_power(n, r)); }, py::arg("n"),
        py::arg("r") = 1.0);
  m.def("all_roots", [](const std::vector<double>& c) { return sdm::all_roots(poly_of(c)); }, py::arg("coeffs"));
  m.def("real_roots_open",
        [](const std::vector<double>& c, double lo, double hi) { return sdm::real_roots_open(poly_of(c), lo, hi); },
        py::arg("coeffs"), py::arg("lo") = -1.0, py::arg("hi") = 1.0);
  m.def("cheb_expand",
        [](const std::vector<double>& d, double a, const std::string& kind) {
          if (kind != "cosine" && kind != "sine") throw std::invalid_argument("kind must be 'cosine' or 'sine'");
          return coeffs_of(sdm::cheb_expand(d, a, kind == "cosine" ? sdm::ChebKind::cosine : sdm::ChebKind::sine));
        },
        py::arg("d"), py::arg("a"), py::arg("kind"));

  m.def("b_from_g", [](const std::vector<double>& g) { return sdm::b_from_g(g); }, py::arg("g"));
  m.def("g_from_b", [](const std::vector<double>& b) { return sdm::g_from_b(b); }, py::arg("b"));
  m.def("char_poly", [](const std::vector<double>& b, double a) { return coeffs_of(sdm::char_poly(b, a)); },
        py::arg("b"), py::arg("a"));
  m.def("d_coeffs", [](const std::vector<double>& b, double a) { return sdm::d_coeffs(b, a).d; }, py::arg("b"),
        py::arg("a"));
  m.def("ntf_series", [](const std::vector<double>& b, int terms) { return sdm::ntf_series(b, terms); },
        py::arg("b"), py::arg("terms"));

  m.def("_characteristic_points",
        [](const std::vector<double>& c) { return json_of(sdm::characteristic_points(poly_of(c))); });
  m.def("_count_inside_e1", [](const std::vector<double>& c) { return json_of(sdm::count_inside_e1(poly_of(c))); });
  m.def("winding_oracle",
        [](const std::vector<double>& c, int samples) { return sdm::winding_oracle(poly_of(c), samples); },
        py::arg("coeffs"), py::arg("samples") = 4096);
  m.def("jury_stable",
        [](const std::vector<double>& c) { return std::string(sdm::to_string(sdm::jury_stable(poly_of(c)))); },
        py::arg("coeffs"));

  m.def("i_min", [](const std::vector<double>& b) { return sdm::i_min(b); }, py::arg("b"));
  m.def("_zero_point_candidates", [](const std::vector<double>& b) {
    const sdm::ZeroPointSet zs = sdm::zero_point_candidates(b);
    sdm::Json cands = sdm::Json::array();
    for (const auto& c : zs.candidates) cands.push_back(sdm::to_json(c));
    return sdm::dump_json({{"candidates", cands}, {"continuum", zs.continuum}}, -1);
  });
  m.def("i_max_order3",
        [](const std::vector<double>& b) {
          const sdm::ClosedFormBound cf = sdm::i_max_order3(b);
          return py::make_tuple(cf.a, cf.x, cf.valid);
        },
        py::arg("b"));
  m.def("_crossing_param", [](const std::vector<double>& b, int grid) {
    sdm::Json out = sdm::Json::array();
    for (const auto& c : sdm::crossing_param(b, grid)) out.push_back(sdm::to_json(c));
    return sdm::dump_json(out, -1);
  });
  m.def("_classify_intervals", [](const std::vector<double>& b) { return json_of(sdm::classify_intervals(b)); });
  m.def("bisect_boundary",
        [](const std::vector<double>& b, double lo, double hi) { return sdm::bisect_boundary(b, lo, hi); },
        py::arg("b"), py::arg("lo"), py::arg("hi"));

  m.def("_simulate",
        [](const std::vector<double>& g, std::optional<double> dc, std::optional<double> sine_amp,
           double sine_period, std::size_t samples, double threshold, std::vector<double> initial_state) {
          sdm::SimOptions opts;
          opts.samples = samples;
          opts.threshold = threshold;
          opts.initial_state = std::move(initial_state);
          const sdm::InputSignal input = input_of(dc, sine_amp, sine_period);
          py::gil_scoped_release release;
          return json_of(sdm::run(g, input, opts));
        });
  m.def("linearized_impulse", [](const std::vector<double>& g, int terms) { return sdm::linearized_impulse(g, terms); },
        py::arg("g"), py::arg("terms"));
  m.def("_sweep", [](const std::vector<double>& g, double amp_lo, double amp_hi, int steps, std::size_t samples,
                     double threshold, unsigned workers) {
    sdm::SweepOptions opts{amp_lo, amp_hi, steps, samples, threshold, workers};
    py::gil_scoped_release release;
    return json_of(sdm::sweep(g, opts));
  });

  m.def("_cli_run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = sdm::cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
