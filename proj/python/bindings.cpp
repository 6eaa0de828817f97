// Python surface: the main operations (stationary solve, evolution run, rate
// fit, property sweep, MMS table, config canonicalization) with plain
// list/dict types so callers need nothing beyond the stdlib.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "radgas/config.hpp"
#include "radgas/diagnostics.hpp"
#include "radgas/elliptic.hpp"
#include "radgas/flux.hpp"
#include "radgas/series_io.hpp"
#include "radgas/stationary.hpp"
#include "radgas/stepper.hpp"

namespace py = pybind11;
using namespace radgas;

namespace {

std::vector<std::string> header_columns() {
    std::vector<std::string> cols;
    std::string cur;
    for (const char* p = kSeriesHeader; *p; ++p) {
        if (*p == ',') {
            cols.push_back(cur);
            cur.clear();
        } else {
            cur += *p;
        }
    }
    cols.push_back(cur);
    return cols;
}

std::vector<double> record_row(const DiagnosticsRecord& r) {
    return {r.t,       r.sup_v,  r.sup_vx,    r.sup_vy,     r.h0,         r.h1,
            r.h2,      r.h3,     r.w_a0,      r.w_a1,       r.w_a2,       r.e_norm,
            r.d_norm,  r.dissip_v, r.dissip_gv, r.sup_p1,   r.sup_p2,     r.sup_divp_x,
            r.sup_divp_y, r.bres, r.cres,     r.m0_sq,      r.malpha_sq};
}

py::dict stationary_profile_py(double u_minus, double u_plus, double lx, int nx, double tol) {
    const EndpointStates ep{u_minus, u_plus};
    StationaryProfile p;
    {
        py::gil_scoped_release rel;
        p = profile_for_grid(FluxConfig{}, ep, lx, nx, tol);
    }
    py::dict d;
    d["x"] = p.x;
    d["ubar"] = p.ubar;
    d["qbar"] = p.qbar;
    d["case"] = p.case_tag == ProfileCase::degenerate ? "degenerate" : "nondegenerate";
    d["first_integral_residual"] = first_integral_residual(p);
    d["ode_residual"] = ode_residual_max(p);
    return d;
}

double linearized_nd_rate_py(double u_minus, double u_plus) {
    return linearized_nd_rate(FluxConfig{}, EndpointStates{u_minus, u_plus});
}

double llf_flux_py(double uL, double uR, double a) {
    return llf_flux(FluxConfig{}, FluxComponent::f, uL, uR, a);
}

std::string canonical_config_py(const std::string& text) {
    return emit_config(parse_config_text(text, "<python>"));
}

py::dict run_simulation_py(const std::string& config_text) {
    const SimConfig cfg = parse_config_text(config_text, "<python>");
    RunResult rr;
    {
        py::gil_scoped_release rel;
        rr = run(cfg);
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(rr.records.size());
    for (const DiagnosticsRecord& r : rr.records) rows.push_back(record_row(r));
    py::dict d;
    d["header"] = header_columns();
    d["rows"] = rows;
    d["t_final"] = rr.state.t;
    return d;
}

std::pair<double, double> fit_decay_py(const std::vector<double>& t,
                                       const std::vector<double>& values, double window) {
    ensure(t.size() == values.size(), "fit_decay: t and values differ in length");
    std::vector<std::pair<double, double>> series;
    series.reserve(t.size());
    for (size_t i = 0; i < t.size(); ++i) series.emplace_back(t[i], values[i]);
    const DecayFit f = fit_decay_exponent(series, window);
    return {f.exponent, f.r2};
}

int check_inequalities_py(unsigned long long seed, int trials) {
    ensure(trials >= 1, "check_inequalities: trials must be >= 1");
    py::gil_scoped_release rel;
    const Grid g = property_grid();
    const InterpKind kinds[] = {InterpKind::L_inf_1d, InterpKind::Lx2Lyinf, InterpKind::LxinfLy2,
                                InterpKind::v_Linfty, InterpKind::GN};
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const ScalarField f = random_test_field(seed + (unsigned long long)t, g, true);
        for (InterpKind k : kinds)
            if (!check_interp_inequality(k, f).holds) ++violations;
        const auto [r2, r3] = norm_equivalence_check(f);
        if (r2 < 0.2 || r2 > 5.0 || r3 < 0.2 || r3 > 5.0) ++violations;
    }
    return violations;
}

std::vector<std::tuple<double, double, double>> elliptic_mms_py(int levels) {
    std::vector<MmsRow> rows;
    {
        py::gil_scoped_release rel;
        rows = elliptic_mms_table(levels);
    }
    std::vector<std::tuple<double, double, double>> out;
    out.reserve(rows.size());
    for (const MmsRow& r : rows) out.emplace_back(r.h, r.max_error, r.ratio);
    return out;
}

} // namespace

PYBIND11_MODULE(_radgas, m) {
    m.doc() = "half-space radiating-gas model: stationary profiles, coupled "
              "hyperbolic-elliptic evolution, and the verification operations";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const NumericalError& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        } catch (const CheckError& e) {
            PyErr_SetString(PyExc_AssertionError, e.what());
        }
    });

    m.def("stationary_profile", &stationary_profile_py, py::arg("u_minus"), py::arg("u_plus"),
          py::arg("lx"), py::arg("nx"), py::arg("tol") = 1e-10,
          "Monotone wall-to-far-field profile on nx+1 nodes; returns x/ubar/qbar "
          "lists plus residual diagnostics.");
    m.def("linearized_nd_rate", &linearized_nd_rate_py, py::arg("u_minus"), py::arg("u_plus"),
          "Exponential decay rate of the far-field linearization (u_plus < 0).");
    m.def("llf_flux", &llf_flux_py, py::arg("u_left"), py::arg("u_right"), py::arg("a"),
          "Local Lax-Friedrichs interface flux for the convex x-flux.");
    m.def("canonical_config", &canonical_config_py, py::arg("text"),
          "Parse a config and emit it in canonical key = value form (ValueError on "
          "bad input).");
    m.def("run_simulation", &run_simulation_py, py::arg("config_text"),
          "Run the coupled system from a config string; returns the diagnostics "
          "series as {header, rows, t_final}.");
    m.def("fit_decay", &fit_decay_py, py::arg("t"), py::arg("values"),
          py::arg("window") = 0.5,
          "Least-squares exponent of values ~ (1+t)^e over the trailing window "
          "fraction; returns (exponent, r_squared).");
    m.def("check_inequalities", &check_inequalities_py, py::arg("seed") = 42,
          py::arg("trials") = 100,
          "Seeded interpolation-inequality and norm-equivalence sweep; returns the "
          "violation count (0 = all hold).");
    m.def("elliptic_mms", &elliptic_mms_py, py::arg("levels") = 4,
          "Manufactured-solution convergence table: list of (h, max_error, ratio).");

    m.attr("series_columns") = header_columns();
    m.attr("__version__") = "0.1.0";
}
