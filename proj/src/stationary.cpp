#include "radgas/stationary.hpp"

#include <algorithm>
#include <cmath>

#include "radgas/fd.hpp"

namespace radgas {

void EndpointStates::validate() const {
    ensure(std::isfinite(u_minus) && std::isfinite(u_plus), "endpoints: values must be finite");
    ensure(u_minus < u_plus, "endpoints: u_minus must be strictly below u_plus");
    ensure(u_plus <= 0.0, "endpoints: u_plus must be <= 0");
}

ProfileCase classify_case(const EndpointStates& ep) {
    ep.validate();
    return ep.u_plus == 0.0 ? ProfileCase::degenerate : ProfileCase::nondegenerate;
}

double linearized_nd_rate(const FluxConfig& flux, const EndpointStates& ep) {
    flux.validate();
    ensure(classify_case(ep) == ProfileCase::nondegenerate,
           "linearized_nd_rate: requires u_plus < 0");
    const double m = eval_flux_deriv(flux, FluxComponent::f, ep.u_plus);
    // roots of m*mu^2 + mu - m = 0; the negative one sets the tail decay
    const double mu_neg = (-1.0 + std::sqrt(1.0 + 4.0 * m * m)) / (2.0 * m);
    return -mu_neg;
}

std::vector<double> first_integral_qbar(const FluxConfig& flux, const EndpointStates& ep,
                                        const std::vector<double>& ubar) {
    const double fplus = eval_flux(flux, FluxComponent::f, ep.u_plus);
    std::vector<double> q(ubar.size());
    for (size_t i = 0; i < ubar.size(); ++i)
        q[i] = fplus - eval_flux(flux, FluxComponent::f, ubar[i]);
    return q;
}

double StationaryProfile::d1qbar(int i) const {
    return -eval_flux_deriv(flux, FluxComponent::f, ubar[i]) * d1[i];
}

double StationaryProfile::far_r() const { return d1qbar(n); }

namespace {

struct OrbitNode {
    double x, v, w, vp, wp;
};

struct Rhs {
    const FluxConfig& flux;
    double fplus;

    void operator()(double v, double w, double& vp, double& wp) const {
        const double fp = eval_flux_deriv(flux, FluxComponent::f, v);
        ensure_num(std::fabs(fp) > 1e-13, "shoot_profile: SingularDerivative, f'(u)=0 on the orbit");
        vp = w / fp;
        wp = eval_flux(flux, FluxComponent::f, v) - fplus - vp;
    }
};

void rk4_step(const Rhs& f, double v, double w, double h, double& v1, double& w1) {
    double k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w;
    f(v, w, k1v, k1w);
    f(v + 0.5 * h * k1v, w + 0.5 * h * k1w, k2v, k2w);
    f(v + 0.5 * h * k2v, w + 0.5 * h * k2w, k3v, k3w);
    f(v + h * k3v, w + h * k3w, k4v, k4w);
    v1 = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    w1 = w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
}

// Backward adaptive RK4 (step doubling) from (x0, v0, w0) until v drops through
// u_minus; returns nodes in decreasing x, last node exactly past the crossing.
std::vector<OrbitNode> integrate_backward(const Rhs& f, double x0, double v0, double w0,
                                          double u_minus, double tol, double hmax) {
    std::vector<OrbitNode> orbit;
    double x = x0, v = v0, w = w0;
    double h = -hmax;
    const double hmin = 1e-9;
    auto push = [&](double xx, double vv, double ww) {
        double vp, wp;
        f(vv, ww, vp, wp);
        orbit.push_back({xx, vv, ww, vp, wp});
    };
    push(x, v, w);
    long guard = 0;
    while (v > u_minus) {
        ensure_num(++guard < 40000000, "shoot_profile: orbit failed to reach u_minus");
        double vf, wf, vh, wh, v2, w2;
        rk4_step(f, v, w, h, vf, wf);
        rk4_step(f, v, w, 0.5 * h, vh, wh);
        rk4_step(f, vh, wh, 0.5 * h, v2, w2);
        const double err = std::max(std::fabs(v2 - vf), std::fabs(w2 - wf)) / 15.0;
        const double scale = tol * (1.0 + std::fabs(v) + std::fabs(w));
        if (err <= scale || std::fabs(h) <= hmin * 1.0001) {
            x += h;
            v = v2;
            w = w2;
            push(x, v, w);
        }
        double fac = (err > 0) ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
        fac = std::clamp(fac, 0.2, 5.0);
        h = -std::clamp(std::fabs(h) * fac, hmin, hmax);
    }
    return orbit;
}

double hermite(double xa, double fa, double da, double xb, double fb, double db, double x) {
    const double h = xb - xa;
    const double t = (x - xa) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * fa + (t3 - 2 * t2 + t) * h * da +
           (-2 * t3 + 3 * t2) * fb + (t3 - t2) * h * db;
}

} // namespace

StationaryProfile shoot_profile(const FluxConfig& flux, const EndpointStates& ep,
                                double lx, int n, double tol) {
    flux.validate();
    ep.validate();
    ensure(n >= 512, "shoot_profile: n must be >= 512");
    ensure(tol > 0 && tol <= 1e-6, "shoot_profile: tol must lie in (0, 1e-6]");
    const ProfileCase pcase = classify_case(ep);
    const double delta = ep.delta();
    if (pcase == ProfileCase::nondegenerate)
        ensure(linearized_nd_rate(flux, ep) * lx >= 10.0,
               "shoot_profile: lx too short, need linearized rate * lx >= 10");
    else
        ensure(delta * lx >= 50.0, "shoot_profile: lx too short, need delta * lx >= 50");

    const double fplus = eval_flux(flux, FluxComponent::f, ep.u_plus);
    const Rhs rhs{flux, fplus};
    const double dx = lx / n;
    const double hmax = std::min(0.01, 0.5 * dx);

    std::vector<OrbitNode> orbit;
    if (pcase == ProfileCase::nondegenerate) {
        const double m = eval_flux_deriv(flux, FluxComponent::f, ep.u_plus);
        const double lam = linearized_nd_rate(flux, ep);
        // local stable manifold w = a*psi + b*psi^2 at the saddle (psi = v - u+)
        const double a = (-1.0 + std::sqrt(1.0 + 4.0 * m * m)) / 2.0;
        const double b = 3.0 * m / (2.0 * (3.0 * a + 1.0));
        double eta = 0.5 * delta * std::exp(-lam * (lx + 2.0));
        for (int tries = 0;; ++tries) {
            ensure_num(tries < 24, "shoot_profile: TruncationTooShort, orbit cannot span [0, lx]");
            const double psi = -eta;
            orbit = integrate_backward(rhs, 0.0, ep.u_plus + psi, a * psi + b * psi * psi,
                                       ep.u_minus, tol, hmax);
            if (orbit.front().x - orbit.back().x >= lx) break;
            eta *= std::exp(-5.0 * lam);
        }
    } else {
        // algebraic tail v = -2/x + 12/x^3 (+O(x^-5)) of the degenerate connection
        double xfar = 1.2 * lx + 2.0 / delta + 10.0;
        for (int tries = 0;; ++tries) {
            ensure_num(tries < 24, "shoot_profile: TruncationTooShort, orbit cannot span [0, lx]");
            const double v0 = -2.0 / xfar + 12.0 / (xfar * xfar * xfar);
            const double v0p = 2.0 / (xfar * xfar) - 36.0 / (xfar * xfar * xfar * xfar);
            const double w0 = eval_flux_deriv(flux, FluxComponent::f, v0) * v0p;
            orbit = integrate_backward(rhs, xfar, v0, w0, ep.u_minus, tol, hmax);
            if (orbit.front().x - orbit.back().x >= lx) break;
            xfar *= 1.5;
        }
    }

    // Locate the u_minus crossing on the last segment and translate it to x=0.
    const OrbitNode& nb = orbit[orbit.size() - 2]; // v > u_minus
    const OrbitNode& na = orbit.back();            // v <= u_minus
    double xlo = na.x, xhi = nb.x; // v(xlo) <= u_minus <= v(xhi)
    for (int it = 0; it < 200 && (xhi - xlo) > 1e-15 * (1.0 + std::fabs(xlo)); ++it) {
        const double xm = 0.5 * (xlo + xhi);
        const double vm = hermite(na.x, na.v, na.vp, nb.x, nb.v, nb.vp, xm);
        if (vm <= ep.u_minus) xlo = xm; else xhi = xm;
    }
    const double xcross = 0.5 * (xlo + xhi);
    ensure_num(orbit.front().x - xcross >= lx,
               "shoot_profile: TruncationTooShort, orbit cannot span [0, lx]");

    std::vector<OrbitNode> fwd(orbit.rbegin(), orbit.rend()); // increasing x
    for (auto& nd : fwd) nd.x -= xcross;

    StationaryProfile p;
    p.endpoints = ep;
    p.flux = flux;
    p.case_tag = pcase;
    p.lx = lx;
    p.dx = dx;
    p.n = n;
    p.x.resize(n + 1);
    p.ubar.resize(n + 1);
    std::vector<double> wres(n + 1);
    size_t seg = 0;
    for (int i = 0; i <= n; ++i) {
        const double xi = i * dx;
        p.x[i] = xi;
        while (seg + 2 < fwd.size() && fwd[seg + 1].x < xi) ++seg;
        const OrbitNode& A = fwd[seg];
        const OrbitNode& B = fwd[seg + 1];
        p.ubar[i] = hermite(A.x, A.v, A.vp, B.x, B.v, B.vp, xi);
        wres[i] = hermite(A.x, A.w, A.wp, B.x, B.w, B.wp, xi);
    }
    p.ubar[0] = ep.u_minus; // crossing is the wall by construction; pin it exactly

    p.qbar = first_integral_qbar(flux, ep, p.ubar);
    p.d1.resize(n + 1);
    p.d2.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double v = p.ubar[i];
        const double w = wres[i];
        const double fp = eval_flux_deriv(flux, FluxComponent::f, v);
        ensure_num(std::fabs(fp) > 1e-300, "shoot_profile: SingularDerivative at a grid node");
        const double vp = w / fp;
        const double wp = eval_flux(flux, FluxComponent::f, v) - fplus - vp;
        p.d1[i] = vp;
        p.d2[i] = (wp * fp - w * 1.0 * vp) / (fp * fp); // f''=1 for burgers
    }
    p.d3 = deriv1_1d(p.d2, dx);
    p.d4 = deriv1_1d(p.d3, dx);

    for (int i = 0; i <= n; ++i)
        ensure_num(p.d1[i] > 0.0, "shoot_profile: profile is not strictly increasing");
    const double far_gap = std::fabs(p.ubar[n] - ep.u_plus);
    if (pcase == ProfileCase::nondegenerate)
        ensure_num(far_gap < 1e-3 * delta + 100.0 * tol,
                   "shoot_profile: far value inconsistent with u_plus");
    else
        ensure_num(far_gap < 3.0 / lx, "shoot_profile: far value inconsistent with u_plus");
    return p;
}

StationaryProfile profile_for_grid(const FluxConfig& flux, const EndpointStates& ep, double lx,
                                   int nx, double tol) {
    ensure(nx >= 8, "profile_for_grid: nx must be >= 8");
    int fine = nx;
    while (fine < 512) fine *= 2;
    StationaryProfile p = shoot_profile(flux, ep, lx, fine, tol);
    if (fine == nx) return p;
    const int stride = fine / nx;
    StationaryProfile c;
    c.endpoints = p.endpoints;
    c.flux = p.flux;
    c.case_tag = p.case_tag;
    c.lx = lx;
    c.n = nx;
    c.dx = lx / nx;
    auto pick = [&](const std::vector<double>& src) {
        std::vector<double> out(nx + 1);
        for (int i = 0; i <= nx; ++i) out[i] = src[(size_t)i * stride];
        return out;
    };
    c.x = pick(p.x);
    c.ubar = pick(p.ubar);
    c.qbar = pick(p.qbar);
    c.d1 = pick(p.d1);
    c.d2 = pick(p.d2);
    c.d3 = pick(p.d3);
    c.d4 = pick(p.d4);
    return c;
}

double verify_profile_decay(const StationaryProfile& p, int k) {
    ensure(k >= 0 && k <= 4, "verify_profile_decay: k must be in 0..4");
    const std::vector<double>* dk[5] = {&p.ubar, &p.d1, &p.d2, &p.d3, &p.d4};
    const double floor_v = 1e-12;
    const double base = (k == 0 && p.case_tag == ProfileCase::nondegenerate) ? p.endpoints.u_plus : 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long cnt = 0;
    for (int i = p.n / 2; i <= p.n; ++i) {
        const double val = std::fabs((*dk[k])[i] - base);
        if (val <= floor_v) continue;
        const double xv = (p.case_tag == ProfileCase::nondegenerate)
                              ? p.x[i]
                              : std::log(1.0 + p.endpoints.delta() * p.x[i]);
        const double yv = std::log(val);
        sx += xv; sy += yv; sxx += xv * xv; sxy += xv * yv;
        ++cnt;
    }
    ensure_num(cnt >= 10, "verify_profile_decay: too few samples above the floor");
    const double det = cnt * sxx - sx * sx;
    ensure_num(std::fabs(det) > 0, "verify_profile_decay: degenerate fit window");
    return (cnt * sxy - sx * sy) / det;
}

double first_integral_residual(const StationaryProfile& p) {
    const double fplus = eval_flux(p.flux, FluxComponent::f, p.endpoints.u_plus);
    double worst = 0;
    for (int i = 0; i <= p.n; ++i)
        worst = std::max(worst,
                         std::fabs(eval_flux(p.flux, FluxComponent::f, p.ubar[i]) + p.qbar[i] - fplus));
    return worst;
}

double ode_residual_max(const StationaryProfile& p) {
    double worst = 0;
    for (int i = 2; i <= p.n - 2; ++i) {
        const double qxx = deriv2_at_o4(p.qbar, p.dx, i);
        worst = std::max(worst, std::fabs(-qxx + p.qbar[i] + p.d1[i]));
    }
    return worst;
}

double wall_identity_residual(const StationaryProfile& p) {
    const std::vector<double> qx = deriv1_1d_o4(p.qbar, p.dx);
    const double fpw = eval_flux_deriv(p.flux, FluxComponent::f, p.endpoints.u_minus);
    return std::fabs(qx[0] + fpw * p.d1[0]);
}

} // namespace radgas
