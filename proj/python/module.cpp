#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "bo/errors.hpp"
#include "bo/evolution.hpp"
#include "bo/experiment.hpp"
#include "bo/gauge.hpp"
#include "bo/picard.hpp"
#include "bo/rng.hpp"
#include "bo/spacetime.hpp"
#include "bo/spectral.hpp"

namespace py = pybind11;
using namespace bo;

namespace {

// Python passes fields as flat sample lists; the grid is (lam, len(samples)).
RealField field_from(const std::vector<double>& samples, double lam) {
    return RealField(Grid(lam, static_cast<int>(samples.size())), samples);
}

SolverConfig solver(double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    return cfg;
}

Trajectory full_run(const std::vector<double>& u0, double lam, double t_final,
                    double dt) {
    const auto [v0, mean] = reduce_mean(field_from(u0, lam));
    return reconstruct(evolve(v0, t_final, solver(dt)), mean);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "pseudo-spectral simulation and verification toolkit for the "
        "Benjamin-Ono equation on the circle";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<BlowupError>(m, "BlowupError");
    py::register_exception<MeanNotZeroError>(m, "MeanNotZeroError");

    m.def(
        "trig_sum",
        [](const std::string& source, double lam, int grid_size) {
            return trig_sum(source, Grid(lam, grid_size)).samples();
        },
        py::arg("source"), py::arg("lam") = 1.0, py::arg("m") = 256,
        "Sample a finite trig sum like '0.1*cos(x) - 0.5*sin(3*x)' on the "
        "m-point grid of the circle of radius lam.");

    m.def(
        "evolve",
        [](const std::vector<double>& u0, double lam, double t_final, double dt) {
            const Trajectory tr = full_run(u0, lam, t_final, dt);
            std::vector<double> t;
            std::vector<std::vector<double>> states;
            t.reserve(tr.size());
            states.reserve(tr.size());
            for (int n = 0; n < tr.size(); ++n) {
                t.push_back(tr.time(n));
                states.push_back(to_physical(tr.states[n]).samples());
            }
            return py::make_tuple(t, states);
        },
        py::arg("u0"), py::arg("lam"), py::arg("t_final"), py::arg("dt") = 1e-3,
        "Integrate u_t + H u_xx = u u_x from the sampled initial condition; "
        "returns (times, states) with one sample row per solver step.");

    m.def(
        "monitor",
        [](const std::vector<double>& u0, double lam, double t_final, double dt) {
            py::list rows;
            for (const MonitorRow& r : monitor_series(full_run(u0, lam, t_final, dt)))
                rows.append(py::make_tuple(r.t, r.mean, r.momentum, r.energy_plus,
                                           r.energy_minus));
            return rows;
        },
        py::arg("u0"), py::arg("lam"), py::arg("t_final"), py::arg("dt") = 1e-3,
        "Run the flow and return (t, mean, momentum, energy_plus, energy_minus) "
        "rows; mean, momentum, and energy_minus are the conserved ones.");

    m.def(
        "gauge_residuals",
        [](const std::vector<double>& u, double lam) {
            const RealField f = field_from(u, lam);
            const RealField back = invert_gauge(make_gauge(f));
            py::dict d;
            d["negative_mode"] = check_negative_mode_identity(f);
            d["high_mode"] = check_highmode_inversion(f);
            d["roundtrip"] = sobolev_norm(to_spectral(back) - to_spectral(f), 0.0);
            return d;
        },
        py::arg("u"), py::arg("lam") = 1.0,
        "L2 defects of the gauge inversion identities on one mean-free field.");

    m.def(
        "norm_report",
        [](const std::vector<double>& u0, double lam, double t_final, double dt,
           double b, double s, const std::string& window) {
            TaperSpec taper;
            if (window == "boxcar")
                taper.window = Window::boxcar;
            else if (window != "smooth")
                throw ConfigError("window: expected smooth or boxcar, got '" +
                                  window + "'");
            const SpaceTimeSpectrum S =
                st_transform(full_run(u0, lam, t_final, dt), taper);
            py::dict d;
            for (const auto& [name, value] : norm_report(S, b, s).values)
                d[name.c_str()] = value;
            return d;
        },
        py::arg("u0"), py::arg("lam"), py::arg("t_final"), py::arg("dt") = 1e-3,
        py::arg("b") = 0.5, py::arg("s") = 0.0, py::arg("window") = "smooth",
        "Run the flow, take the windowed space-time transform, and report the "
        "norm family at exponents (b, s).");

    m.def(
        "strichartz_ratios",
        [](int count, std::uint64_t seed, double lam, int grid_size, int n_t,
           double t_window) {
            return strichartz_ratio(count, seed, Grid(lam, grid_size), n_t,
                                    TaperSpec{}, t_window)
                .ratio;
        },
        py::arg("count"), py::arg("seed"), py::arg("lam") = 1.0,
        py::arg("m") = 64, py::arg("n_t") = 64, py::arg("t_window") = 4.0,
        "L4 over X^{3/8,0} ratios of random free wave packets.");

    m.def(
        "picard_series",
        [](const std::vector<double>& phi, double lam, double eps, int order,
           double t_final, double dt, double s) {
            const RealField f = field_from(phi, lam);
            const ResidualSeries r =
                series_vs_solver(f, eps, order, t_final, solver(dt), s);
            return py::make_tuple(r.t, r.value);
        },
        py::arg("phi"), py::arg("lam"), py::arg("eps"), py::arg("order"),
        py::arg("t_final"), py::arg("dt") = 1e-3, py::arg("s") = 0.0,
        "Truncation error of the order-K Picard series against the solver run "
        "from eps * phi; returns (times, errors).");

    m.def(
        "closed_form",
        [](int k, int n, double t, int grid_size) {
            return closed_form_a(k, n, t, Grid(1.0, grid_size)).samples();
        },
        py::arg("k"), py::arg("n"), py::arg("t"), py::arg("m") = 256,
        "Closed form of the k-th Picard iterate (k <= 3) of cos(n x) on the "
        "unit circle.");

    m.def(
        "illposed_sweep",
        [](double s, double t, const std::vector<int>& n_list) {
            py::list rows;
            for (const IllposedRow& r : illposed_sweep(s, t, n_list)) {
                py::dict d;
                d["n"] = r.n;
                d["eps_n"] = r.eps_n;
                d["norm_psi"] = r.norm_psi;
                d["norm_a3"] = r.norm_a3;
                d["ratio"] = r.ratio;
                rows.append(d);
            }
            return rows;
        },
        py::arg("s"), py::arg("t"), py::arg("n_list"),
        "Third-iterate growth sweep at regularity s <= 0; ratio stays of size "
        "one while the un-normalized norms grow like t N^{-2s}.");

    m.def(
        "run_config",
        [](const std::string& text) {
            std::ostringstream diag;
            const int rc = run_experiment(parse_config(text), diag);
            return py::make_tuple(rc, diag.str());
        },
        py::arg("text"),
        "Run one experiment from config text; returns (exit_code, log). "
        "Artifacts land under the config's output directory, honoring "
        "$BOSPEC_OUTPUT_ROOT.");

    m.def("describe", &describe_text, py::arg("kind"),
          "Schema and output documentation for one experiment kind.");
}
