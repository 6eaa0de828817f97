#include "radgas/stepper.hpp"

#include <cmath>
#include <cstdio>

#include "radgas/fft.hpp"
#include "radgas/parallel.hpp"

namespace radgas {

Grid SimConfig::make_sim_grid() const {
    return topology == Topology::torus ? Grid::torus(nx, ny, lx, ly)
                                       : Grid::half_strip(nx, ny, lx, ly);
}

void SimConfig::validate() const {
    endpoints.validate();
    flux.validate();
    ensure(nx >= 8, "grid.nx must be >= 8");
    ensure(ny >= 4 && is_pow2(ny), "grid.ny must be a power of two >= 4");
    if (topology == Topology::torus) ensure(is_pow2(nx), "torus grids need nx a power of two");
    ensure(lx > 0 && ly > 0, "grid.lx and grid.ly must be positive");
    ensure(cfl > 0 && cfl <= 1, "cfl must lie in (0, 1]");
    ensure(std::isfinite(t_end) && t_end >= 0, "t_end must be finite and >= 0");
    ensure(std::isfinite(alpha) && alpha >= 0, "alpha must be >= 0");
    ensure(record_every >= 1, "record_every must be >= 1");
    ensure(std::isfinite(pert.amp), "perturbation.amp must be finite");
    if (pert.kind == PerturbationKind::gaussian)
        ensure(pert.sx > 0 && pert.sy > 0, "perturbation widths sx, sy must be positive");
    if (pert.kind == PerturbationKind::weighted_tail)
        ensure(pert.beta > 0, "perturbation.beta must be positive");
}

ScalarField initial_perturbation_field(const SimConfig& cfg, const Grid& g) {
    const Perturbation& p = cfg.pert;
    switch (p.kind) {
    case PerturbationKind::none:
        return ScalarField(g);
    case PerturbationKind::gaussian:
        // periodic distance in y (and in x on the torus); on the strip a smooth
        // cutoff pins v0(0,y) = 0 exactly
        return ScalarField::from_fn(g, [&](double x, double y) {
            double xr = x - p.x0;
            double cut = 1.0;
            if (g.periodic_x) {
                xr = (g.lx / M_PI) * std::sin(M_PI * xr / g.lx);
            } else {
                const double th = std::tanh(2.0 * x / p.sx);
                cut = th * th;
            }
            const double yr = (g.ly / M_PI) * std::sin(M_PI * (y - p.y0) / g.ly);
            return p.amp * cut * std::exp(-xr * xr / (p.sx * p.sx)) *
                   std::exp(-yr * yr / (p.sy * p.sy));
        });
    case PerturbationKind::weighted_tail:
        return ScalarField::from_fn(g, [&](double x, double y) {
            return p.amp * std::pow(1.0 + x, -p.beta) * (x / (1.0 + x)) *
                   std::cos(2.0 * M_PI * y / g.ly);
        });
    }
    throw ConfigError("unknown perturbation kind");
}

namespace {

double stage_far_ghost(const SimState& st, const SimConfig& cfg) {
    // The profile's own far value, so the subtracted stationary rhs and the stage
    // rhs agree and the perturbation sees homogeneous far data. (Matches u_plus up
    // to the profile tail; for an algebraic tail the distinction is essential.)
    return st.profile ? st.profile->ubar.back() : cfg.endpoints.u_plus;
}

void impose_rows(ScalarField& u, const SimConfig& cfg, double far_value) {
    if (u.grid.periodic_x) return;
    const int last = u.grid.nxn() - 1;
    for (int j = 0; j < u.grid.ny; ++j) {
        u.at(0, j) = cfg.endpoints.u_minus;
        u.at(last, j) = far_value;
    }
}

ScalarField solve_r_for(const SimConfig& cfg, const SimState& st, const ScalarField& u) {
    if (cfg.topology == Topology::torus) return divq_periodic_oracle(u);
    EllipticBC bc{cfg.bc, eval_flux_deriv(cfg.flux, FluxComponent::f, cfg.endpoints.u_minus)};
    return solve_divq_halfstrip(u, bc, st.far_r);
}

ScalarField rhs_with_ghost(const SimConfig& cfg, const ScalarField& u, const ScalarField& r,
                           double far_ghost) {
    require_same_grid(u, r, "discrete_rhs");
    const Grid& g = u.grid;
    const int nxn = g.nxn(), ny = g.ny;
    const bool px = g.periodic_x;
    ScalarField out(g);

    // x sweep: one padded row per j, interfaces m-1/2 for m = 0..nxn
    parallel_for(0, ny, [&](int j0, int j1) {
        std::vector<double> row(nxn + 4), fx(nxn + 1);
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < nxn; ++i) row[i + 2] = u.at(i, j);
            if (px) {
                row[0] = u.at(nxn - 2, j);
                row[1] = u.at(nxn - 1, j);
                row[nxn + 2] = u.at(0, j);
                row[nxn + 3] = u.at(1, j);
            } else {
                row[0] = row[1] = cfg.endpoints.u_minus;
                row[nxn + 2] = row[nxn + 3] = far_ghost;
            }
            for (int m = 0; m <= nxn; ++m) {
                const double sL = 0.5 * (row[m + 2] - row[m]);
                const double sR = 0.5 * (row[m + 3] - row[m + 1]);
                const double uL = row[m + 1] + 0.5 * sL;
                const double uR = row[m + 2] - 0.5 * sR;
                const double a =
                    std::max(std::fabs(eval_flux_deriv(cfg.flux, FluxComponent::f, uL)),
                             std::fabs(eval_flux_deriv(cfg.flux, FluxComponent::f, uR)));
                fx[m] = llf_flux(cfg.flux, FluxComponent::f, uL, uR, a);
            }
            for (int i = 0; i < nxn; ++i) out.at(i, j) = -(fx[i + 1] - fx[i]) / g.dx;
        }
    });

    if (cfg.flux.g_kind != FluxKind::zero) {
        // y sweep: gy(i,j) is the flux through the interface between rows j-1 and j
        ScalarField gy(g);
        parallel_for(0, ny, [&](int j0, int j1) {
            for (int j = j0; j < j1; ++j) {
                const int jm2 = (j - 2 + ny) % ny, jm1 = (j - 1 + ny) % ny, jp1 = (j + 1) % ny;
                for (int i = 0; i < nxn; ++i) {
                    const double sL = 0.5 * (u.at(i, j) - u.at(i, jm2));
                    const double sR = 0.5 * (u.at(i, jp1) - u.at(i, jm1));
                    const double uL = u.at(i, jm1) + 0.5 * sL;
                    const double uR = u.at(i, j) - 0.5 * sR;
                    const double a =
                        std::max(std::fabs(eval_flux_deriv(cfg.flux, FluxComponent::g, uL)),
                                 std::fabs(eval_flux_deriv(cfg.flux, FluxComponent::g, uR)));
                    gy.at(i, j) = llf_flux(cfg.flux, FluxComponent::g, uL, uR, a);
                }
            }
        });
        parallel_for(0, ny, [&](int j0, int j1) {
            for (int j = j0; j < j1; ++j) {
                const int jp1 = (j + 1) % ny;
                for (int i = 0; i < nxn; ++i)
                    out.at(i, j) -= (gy.at(i, jp1) - gy.at(i, j)) / g.dy;
            }
        });
    }

    const long n = g.size();
    parallel_for(0, (int)n, [&](int a, int b) {
        for (int k = a; k < b; ++k) out.v[k] -= r.v[k];
    });
    return out;
}

} // namespace

ScalarField discrete_rhs(const SimConfig& cfg, const ScalarField& u, const ScalarField& r) {
    return rhs_with_ghost(cfg, u, r, cfg.endpoints.u_plus);
}

SimState initialize(const SimConfig& cfg) {
    cfg.validate();
    const Grid g = cfg.make_sim_grid();
    SimState st;
    const ScalarField v0 = initial_perturbation_field(cfg, g);

    if (cfg.topology == Topology::halfstrip) {
        auto prof = std::make_shared<StationaryProfile>(
            profile_for_grid(cfg.flux, cfg.endpoints, cfg.lx, cfg.nx, 1e-10));
        st.profile = prof;
        st.far_r = prof->far_r();
        st.u = ScalarField(g);
        ScalarField ubar2(g);
        parallel_for(0, g.ny, [&](int j0, int j1) {
            for (int j = j0; j < j1; ++j)
                for (int i = 0; i < g.nxn(); ++i) {
                    ubar2.at(i, j) = prof->ubar[i];
                    st.u.at(i, j) = prof->ubar[i] + v0.at(i, j);
                }
        });
        st.r = solve_r_for(cfg, st, st.u);
        st.q = reconstruct_q(st.u, st.r);
        const ScalarField rbar = solve_r_for(cfg, st, ubar2);
        st.balance = rhs_with_ghost(cfg, ubar2, rbar, stage_far_ghost(st, cfg));
        const VectorField qbar_h = reconstruct_q(ubar2, rbar);
        st.rbar_col.resize(g.nxn());
        st.qbar1_col.resize(g.nxn());
        for (int i = 0; i < g.nxn(); ++i) {
            st.rbar_col[i] = rbar.at(i, 0);
            st.qbar1_col[i] = qbar_h.c1.at(i, 0);
        }

        if (cfg.warn_amplitude) {
            bool nonneg = false;
            for (double uv : st.u.v)
                if (uv >= 0.0) { nonneg = true; break; }
            if (classify_case(cfg.endpoints) == ProfileCase::nondegenerate && nonneg)
                std::fprintf(stderr,
                             "warning: AmplitudeTooLarge: initial data touches u >= 0 but the "
                             "monotone setup expects u < 0\n");
            else if (std::fabs(cfg.pert.amp) > 0.25 * cfg.endpoints.delta())
                std::fprintf(stderr, "warning: perturbation amplitude %.3g above delta/4 = %.3g\n",
                             std::fabs(cfg.pert.amp), 0.25 * cfg.endpoints.delta());
        }
    } else {
        st.background = 0.5 * (cfg.endpoints.u_minus + cfg.endpoints.u_plus);
        st.u = ScalarField(g);
        const long n = g.size();
        parallel_for(0, (int)n, [&](int a, int b) {
            for (int k = a; k < b; ++k) st.u.v[k] = st.background + v0.v[k];
        });
        st.r = divq_periodic_oracle(st.u);
        st.q = solve_q_periodic_oracle(st.u);
        st.balance = ScalarField(g);
        st.far_r = 0.0;
    }

    st.m0_sq = norm_hk(v0, 3) * norm_hk(v0, 3);
    const double wa2 = weighted_norm(v0, cfg.alpha, 2);
    st.malpha_sq = st.m0_sq + wa2 * wa2;
    st.t = 0.0;
    return st;
}

double cfl_dt(const SimConfig& cfg, const SimState& st) {
    ensure_num(st.u.all_finite(), "cfl_dt: field is not finite");
    double ax = 0.0, ay = 0.0;
    for (double uv : st.u.v) {
        ax = std::max(ax, std::fabs(eval_flux_deriv(cfg.flux, FluxComponent::f, uv)));
        if (cfg.flux.g_kind != FluxKind::zero)
            ay = std::max(ay, std::fabs(eval_flux_deriv(cfg.flux, FluxComponent::g, uv)));
    }
    const double denom = std::max(ax / st.u.grid.dx + ay / st.u.grid.dy, 1e-8);
    return cfg.cfl / denom;
}

void step(SimState& st, const SimConfig& cfg, double dt) {
    ensure_num(std::isfinite(dt) && dt > 0, "step: dt must be positive and finite");
    ensure_num(dt <= cfl_dt(cfg, st) * (1.0 + 1e-9), "step: dt exceeds the stability bound");
    const Grid& g = st.u.grid;
    const long n = g.size();
    const double far = stage_far_ghost(st, cfg);

    const ScalarField L1 = rhs_with_ghost(cfg, st.u, st.r, far);
    ScalarField u1(g);
    parallel_for(0, (int)n, [&](int a, int b) {
        for (int k = a; k < b; ++k) u1.v[k] = st.u.v[k] + dt * (L1.v[k] - st.balance.v[k]);
    });
    impose_rows(u1, cfg, far);

    const ScalarField r1 = solve_r_for(cfg, st, u1);
    const ScalarField L2 = rhs_with_ghost(cfg, u1, r1, far);
    parallel_for(0, (int)n, [&](int a, int b) {
        for (int k = a; k < b; ++k)
            st.u.v[k] = 0.5 * st.u.v[k] + 0.5 * (u1.v[k] + dt * (L2.v[k] - st.balance.v[k]));
    });
    impose_rows(st.u, cfg, far);

    const double tnew = st.t + dt;
    if (!st.u.all_finite()) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "NaNDetected: non-finite field at t=%.17g", tnew);
        throw NumericalError(buf);
    }
    st.r = solve_r_for(cfg, st, st.u);
    st.q = cfg.topology == Topology::torus ? solve_q_periodic_oracle(st.u)
                                           : reconstruct_q(st.u, st.r);
    st.t = tnew;
}

PerturbationFields extract_perturbation(const SimState& st) {
    const Grid& g = st.u.grid;
    PerturbationFields pf{ScalarField(g), {ScalarField(g), ScalarField(g)}, ScalarField(g)};
    if (st.profile) {
        const StationaryProfile& pr = *st.profile;
        ensure((int)st.rbar_col.size() == g.nxn() && (int)st.qbar1_col.size() == g.nxn(),
               "extract_perturbation: state lacks the stationary baseline columns");
        parallel_for(0, g.ny, [&](int j0, int j1) {
            for (int j = j0; j < j1; ++j)
                for (int i = 0; i < g.nxn(); ++i) {
                    pf.v.at(i, j) = st.u.at(i, j) - pr.ubar[i];
                    pf.p.c1.at(i, j) = st.q.c1.at(i, j) - st.qbar1_col[i];
                    pf.p.c2.at(i, j) = st.q.c2.at(i, j);
                    pf.divp.at(i, j) = st.r.at(i, j) - st.rbar_col[i];
                }
        });
    } else {
        const long n = g.size();
        parallel_for(0, (int)n, [&](int a, int b) {
            for (int k = a; k < b; ++k) {
                pf.v.v[k] = st.u.v[k] - st.background;
                pf.p.c1.v[k] = st.q.c1.v[k];
                pf.p.c2.v[k] = st.q.c2.v[k];
                pf.divp.v[k] = st.r.v[k];
            }
        });
    }
    return pf;
}

DiagnosticsRecord record_state(const SimConfig& cfg, const SimState& st) {
    const PerturbationFields pf = extract_perturbation(st);
    std::vector<double> ubx(st.u.grid.nxn(), 0.0);
    if (st.profile) ubx = st.profile->d1;
    return compute_record(st.t, pf.v, pf.p, pf.divp, ubx, cfg.endpoints.u_minus, cfg.alpha,
                          st.m0_sq, st.malpha_sq);
}

RunResult run(const SimConfig& cfg, const RecordHook& hook) {
    return run_from(cfg, initialize(cfg), hook);
}

RunResult run_from(const SimConfig& cfg, SimState state, const RecordHook& hook) {
    RunResult res;
    res.state = std::move(state);
    int emitted = 0;
    auto emit = [&]() {
        const DiagnosticsRecord rec = record_state(cfg, res.state);
        res.records.push_back(rec);
        if (hook) hook(emitted, res.state, rec);
        ++emitted;
    };
    emit();
    const double eps = 1e-12;
    long step_idx = 0;
    while (res.state.t < cfg.t_end - eps) {
        const double dt = std::min(cfl_dt(cfg, res.state), cfg.t_end - res.state.t);
        step(res.state, cfg, dt);
        ++step_idx;
        if (step_idx % cfg.record_every == 0 || res.state.t >= cfg.t_end - eps) emit();
    }
    return res;
}

} // namespace radgas
