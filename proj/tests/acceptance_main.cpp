// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fail.
// Tolerances are pinned here; the scenarios are the reference configurations
// the README documents. Runtime is dominated by the two t_end=200 runs.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "radgas/config.hpp"
#include "radgas/elliptic.hpp"
#include "radgas/fd.hpp"
#include "radgas/flux.hpp"
#include "radgas/series_io.hpp"
#include "radgas/stationary.hpp"
#include "radgas/stepper.hpp"

using namespace radgas;

static int g_failed = 0;

static std::string str(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

static void report(int idx, const char* what, bool ok, const std::string& detail) {
    std::printf("C%-2d %s  %-34s %s\n", idx, ok ? "PASS" : "FAIL", what, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

template <class F>
static void criterion(int idx, const char* what, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(idx, what, false, str("exception: %s", e.what()));
    }
}

// ---- the shared ND reference run (criteria 5, 7, 8, 9) ----

struct RefRunData {
    std::vector<DiagnosticsRecord> recs;
    double wall_seconds = 0;
    double worst_energy_ratio = 0; // max over records of C9's LHS / M0^2
    bool ok = false;
    std::string error;
};

static RefRunData reference_run() {
    RefRunData out;
    SimConfig cfg; // defaults are the nondegenerate reference scenario
    cfg.t_end = 200.0;

    double prev_t = 0, prev_integrand = 0, integral = 0;
    const auto hook = [&](int k, const SimState& st, const DiagnosticsRecord& rec) {
        const PerturbationFields pf = extract_perturbation(st);
        const ScalarField vx = ddx(pf.v), vy = ddy(pf.v);
        const double grad_h1_sq = std::pow(norm_hk(vx, 1), 2) + std::pow(norm_hk(vy, 1), 2);
        const double divp_sq = std::pow(norm_hk(pf.divp, 0), 2);
        const double p_sq = std::pow(norm_hk(pf.p.c1, 0), 2) + std::pow(norm_hk(pf.p.c2, 0), 2);
        const double integrand = grad_h1_sq + divp_sq + p_sq;
        if (k > 0) integral += 0.5 * (rec.t - prev_t) * (integrand + prev_integrand);
        prev_t = rec.t;
        prev_integrand = integrand;
        const double lhs = rec.h2 * rec.h2 + integral;
        out.worst_energy_ratio = std::max(out.worst_energy_ratio, lhs / rec.m0_sq);
    };

    const auto t0 = std::chrono::steady_clock::now();
    try {
        RunResult rr = run(cfg, hook);
        out.recs = std::move(rr.records);
        out.ok = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

int main() {
    const FluxConfig flux; // convex burgers x-flux

    // C1/C2: nondegenerate stationary profile quality and decay rate.
    StationaryProfile nd_profile;
    bool have_nd = false;
    criterion(1, "stationary ND residuals", [&] {
        const EndpointStates ep{-1.0, -0.2};
        nd_profile = shoot_profile(flux, ep, 80.0, 4096, 1e-10);
        have_nd = true;
        const double fi = first_integral_residual(nd_profile);
        const double ode = ode_residual_max(nd_profile);
        bool mono = true;
        for (size_t i = 0; i + 1 < nd_profile.ubar.size(); ++i)
            mono = mono && nd_profile.ubar[i + 1] > nd_profile.ubar[i];
        report(1, "stationary ND residuals", fi <= 1e-8 && ode <= 1e-6 && mono,
               str("first-integral %.3g (<=1e-8), ode %.3g (<=1e-6), increasing %s", fi, ode,
                   mono ? "yes" : "NO"));
    });

    criterion(2, "stationary ND decay rate", [&] {
        if (!have_nd) throw NumericalError("no profile from C1");
        const double lam = linearized_nd_rate(flux, nd_profile.endpoints);
        const double fitted = -verify_profile_decay(nd_profile, 0);
        const double rel = std::fabs(fitted - lam) / lam;
        report(2, "stationary ND decay rate", rel <= 0.03,
               str("fitted %.6f vs linearized %.6f (rel err %.2f%%, <=3%%)", fitted, lam,
                   100 * rel));
    });

    criterion(3, "stationary D algebraic rates", [&] {
        const EndpointStates ep{-0.5, 0.0};
        const StationaryProfile pd = shoot_profile(flux, ep, 400.0, 8192, 1e-10);
        double s[3];
        bool ok = true;
        for (int k = 0; k < 3; ++k) {
            s[k] = verify_profile_decay(pd, k);
            ok = ok && std::fabs(s[k] + (k + 1)) <= 0.15 * (k + 1);
        }
        report(3, "stationary D algebraic rates", ok,
               str("exponents %.3f %.3f %.3f vs -1 -2 -3 (each +-15%%)", s[0], s[1], s[2]));
    });

    criterion(4, "elliptic solver cross-checks", [&] {
        const Grid g = make_grid(32, 32, 8.0, 8.0);
        const ScalarField u = ScalarField::from_fn(g, [](double x, double y) {
            return std::exp(-0.6 * x) * std::sin(2 * M_PI * y / 8.0) +
                   0.4 * std::exp(-0.3 * (x - 3) * (x - 3)) * std::cos(4 * M_PI * y / 8.0) +
                   0.2 * std::exp(-0.5 * x);
        });
        const EllipticBC bc{EllipticBCKind::compatibility,
                            eval_flux_deriv(FluxConfig{}, FluxComponent::f, -1.0)};
        const ScalarField fast = solve_divq_halfstrip(u, bc, 0.25);
        const ScalarField dense = dense_direct_oracle(u, bc, 0.25);
        double diff = 0;
        for (long k = 0; k < g.size(); ++k) diff = std::max(diff, std::fabs(fast.v[k] - dense.v[k]));

        const std::vector<MmsRow> rows = elliptic_mms_table(4);
        bool mms_ok = rows.size() == 4;
        for (size_t i = 1; i < rows.size(); ++i)
            mms_ok = mms_ok && rows[i].ratio >= 3.5 && rows[i].ratio <= 4.5;

        const Grid tg = Grid::torus(64, 64, 8.0, 8.0);
        const ScalarField ut = ScalarField::from_fn(tg, [](double x, double y) {
            return 0.3 * std::sin(2 * M_PI * x / 8.0) * std::cos(4 * M_PI * y / 8.0) +
                   0.1 * std::cos(6 * M_PI * x / 8.0) * std::sin(2 * M_PI * y / 8.0) +
                   0.05 * std::cos(2 * M_PI * (x + y) / 8.0);
        });
        const VectorField qt = solve_q_periodic_oracle(ut);
        const double res = oracle_residual_spectral(ut, qt);

        report(4, "elliptic solver cross-checks", diff <= 1e-10 && mms_ok && res <= 1e-12,
               str("fast-vs-dense %.3g (<=1e-10), mms ratios %.3f %.3f %.3f (in [3.5,4.5]), "
                   "spectral residual %.3g (<=1e-12)",
                   diff, rows.size() > 1 ? rows[1].ratio : 0.0,
                   rows.size() > 2 ? rows[2].ratio : 0.0, rows.size() > 3 ? rows[3].ratio : 0.0,
                   res));
    });

    // The long nondegenerate reference run feeds C5, C7, C8 (ND part), C9.
    const RefRunData ref = reference_run();
    const SimConfig ref_cfg = [] {
        SimConfig c;
        c.t_end = 200.0;
        return c;
    }();
    const Grid ref_grid = ref_cfg.make_sim_grid();

    criterion(5, "evolution structural identities", [&] {
        if (!ref.ok) throw NumericalError(ref.error);
        const double scale = ref.recs.at(0).sup_v;
        const double dx2 = ref_grid.dx * ref_grid.dx, dy2 = ref_grid.dy * ref_grid.dy;
        double bmax = 0, cmax = 0;
        for (const auto& r : ref.recs) {
            if (r.t > 50.0 + 1e-9) continue;
            bmax = std::max(bmax, r.bres);
            cmax = std::max(cmax, r.cres);
        }
        const double bthr = 10 * dx2 * scale, cthr = 10 * (dx2 + dy2) * scale;
        report(5, "evolution structural identities", bmax <= bthr && cmax <= cthr,
               str("boundary residual %.3g (<=%.3g), curl residual %.3g (<=%.3g)", bmax, bthr,
                   cmax, cthr));
    });

    criterion(6, "torus conservation", [&] {
        SimConfig tc;
        tc.topology = Topology::torus;
        tc.nx = tc.ny = 32;
        tc.lx = tc.ly = 8.0;
        tc.pert.amp = 0.05;
        tc.pert.x0 = tc.pert.y0 = 4.0;
        tc.pert.sx = tc.pert.sy = 1.0;
        SimState st = initialize(tc);
        const double m0 = integrate2d(st.u, 0.0);
        for (int k = 0; k < 10000; ++k) step(st, tc, cfl_dt(tc, st));
        const double drift = std::fabs(integrate2d(st.u, 0.0) - m0) / std::fabs(m0);
        report(6, "torus conservation", drift <= 1e-10,
               str("relative mass drift %.3g over 10^4 steps (<=1e-10)", drift));
    });

    criterion(7, "asymptotic stability", [&] {
        if (!ref.ok) throw NumericalError(ref.error);
        const DiagnosticsRecord& r0 = ref.recs.front();
        const DiagnosticsRecord& rT = ref.recs.back();
        double grad_l2_max = 0, grad_sup_max = 0;
        for (const auto& r : ref.recs) {
            grad_l2_max = std::max(grad_l2_max, std::sqrt(std::max(0.0, r.h1 * r.h1 - r.h0 * r.h0)));
            grad_sup_max = std::max(grad_sup_max, std::max(r.sup_vx, r.sup_vy));
        }
        const double grad_l2_T = std::sqrt(std::max(0.0, rT.h1 * rT.h1 - rT.h0 * rT.h0));
        const double grad_sup_T = std::max(rT.sup_vx, rT.sup_vy);
        const bool ok = rT.sup_v <= 0.05 * r0.sup_v && grad_l2_T <= grad_l2_max / 10 &&
                        grad_sup_T <= grad_sup_max / 10 && ref.wall_seconds <= 600.0;
        report(7, "asymptotic stability", ok,
               str("sup|v| %.3g -> %.3g (<=%.3g), |grad v|_2 drop %.0fx, sup|grad v| drop %.0fx, "
                   "%.0fs (<=600s)",
                   r0.sup_v, rT.sup_v, 0.05 * r0.sup_v, grad_l2_max / std::max(grad_l2_T, 1e-300),
                   grad_sup_max / std::max(grad_sup_T, 1e-300), ref.wall_seconds));
    });

    criterion(8, "decay-exponent structure", [&] {
        if (!ref.ok) throw NumericalError(ref.error);
        const double e_v = fit_decay_exponent(series_column(ref.recs, "sup_v"), 0.5).exponent;
        const double e_vy = fit_decay_exponent(series_column(ref.recs, "sup_vy"), 0.5).exponent;
        const double e_p1 = fit_decay_exponent(series_column(ref.recs, "sup_p1"), 0.5).exponent;
        const double e_p2 = fit_decay_exponent(series_column(ref.recs, "sup_p2"), 0.5).exponent;

        SimConfig dg;
        dg.endpoints = EndpointStates{-0.5, 0.0};
        dg.lx = 160.0;
        dg.t_end = 200.0;
        const RunResult dr = run(dg);
        const double e_v_deg = fit_decay_exponent(series_column(dr.records, "sup_v"), 0.5).exponent;

        const bool ok = e_v <= -0.15 && e_vy <= e_v - 0.25 && e_p2 <= e_p1 - 0.15 &&
                        e_v_deg <= -0.15;
        report(8, "decay-exponent structure", ok,
               str("ND sup|v| %.3f (<=-0.15), sup|v_y| %.3f (<=%.3f), sup|p2| %.3f (<=%.3f); "
                   "D sup|v| %.3f (<=-0.15)",
                   e_v, e_vy, e_v - 0.25, e_p2, e_p1 - 0.15, e_v_deg));
    });

    criterion(9, "a priori energy bound", [&] {
        if (!ref.ok) throw NumericalError(ref.error);
        report(9, "a priori energy bound", ref.worst_energy_ratio <= 20.0,
               str("max (||v||_H2^2 + int dissipation) / M0^2 = %.3f (<=20)",
                   ref.worst_energy_ratio));
    });

    criterion(10, "inequality + norm-equivalence sweep", [&] {
        const Grid g = property_grid();
        const InterpKind kinds[] = {InterpKind::L_inf_1d, InterpKind::Lx2Lyinf,
                                    InterpKind::LxinfLy2, InterpKind::v_Linfty, InterpKind::GN};
        int held = 0, total = 0;
        double eq_lo = 1e300, eq_hi = 0;
        for (int t = 0; t < 100; ++t) {
            const ScalarField f = random_test_field(4000 + t, g, true);
            for (InterpKind k : kinds) {
                ++total;
                held += check_interp_inequality(k, f).holds ? 1 : 0;
            }
            const auto [lo, hi] = norm_equivalence_check(f);
            eq_lo = std::min(eq_lo, std::min(lo, hi));
            eq_hi = std::max(eq_hi, std::max(lo, hi));
        }
        report(10, "inequality + norm-equivalence sweep",
               held == total && eq_lo >= 0.2 && eq_hi <= 5.0,
               str("%d/%d inequality checks hold, norm-equivalence ratios in [%.3f, %.3f] "
                   "(within [0.2,5])",
                   held, total, eq_lo, eq_hi));
    });

    criterion(11, "determinism and persistence", [&] {
        SimConfig c;
        c.nx = 128;
        c.ny = 16;
        c.lx = 60.0;
        c.ly = 8.0;
        c.pert.x0 = 20.0;
        c.pert.y0 = 4.0;
        c.t_end = 6.0;
        c.record_every = 10;

        const std::string ckpath = "acceptance_ck.bin";
        const int target = 3;
        std::vector<std::string> rows_full;
        run(c, [&](int k, const SimState& st, const DiagnosticsRecord& rec) {
            rows_full.push_back(format_series_row(rec));
            if (k == target) write_checkpoint(st, ckpath);
        });

        SimState resumed = restore_from_checkpoint(c, ckpath);
        std::vector<std::string> rows_resumed;
        run_from(c, std::move(resumed), [&](int, const SimState&, const DiagnosticsRecord& rec) {
            rows_resumed.push_back(format_series_row(rec));
        });

        bool rows_ok = rows_full.size() >= (size_t)target + 2 &&
                       rows_resumed.size() == rows_full.size() - target;
        size_t mismatches = 0;
        if (rows_ok)
            for (size_t i = 0; i < rows_resumed.size(); ++i)
                if (rows_resumed[i] != rows_full[target + i]) ++mismatches;
        rows_ok = rows_ok && mismatches == 0;

        SimConfig nd;
        nd.endpoints = EndpointStates{-0.8123456789012345, -0.2};
        nd.flux.g_kind = FluxKind::linear;
        nd.flux.g_coeff = 0.37;
        nd.nx = 300;
        nd.ny = 128;
        nd.lx = 77.5;
        nd.ly = 12.25;
        nd.cfl = 0.61;
        nd.t_end = 12.75;
        nd.bc = EllipticBCKind::homogeneous;
        nd.alpha = 1.75;
        nd.pert.kind = PerturbationKind::weighted_tail;
        nd.pert.amp = 0.003;
        nd.pert.beta = 1.5;
        nd.record_every = 7;
        nd.seed = 987654321123ull;
        const bool cfg_ok = config_equal(parse_config_text(emit_config(nd)), nd);

        report(11, "determinism and persistence", rows_ok && cfg_ok,
               str("resumed records %zu/%zu byte-identical (%zu mismatches), config round-trip %s",
                   rows_resumed.size(), rows_full.size() - target, mismatches,
                   cfg_ok ? "exact" : "BROKEN"));
    });

    if (g_failed) {
        std::printf("acceptance: %d of 11 criteria FAILED\n", g_failed);
        return 1;
    }
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
}
