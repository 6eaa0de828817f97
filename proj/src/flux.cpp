#include "radgas/flux.hpp"

#include <cmath>

namespace radgas {

void FluxConfig::validate() const {
    ensure(f_kind == FluxKind::burgers, "flux: f must be burgers (convex, f(0)=f'(0)=0)");
    ensure(kappa > 0.0 && kappa <= 1.0, "flux: kappa must lie in (0, 1] for the burgers flux");
    if (g_kind == FluxKind::linear)
        ensure(std::isfinite(g_coeff), "flux: g_coeff must be finite");
}

static double flux_of(FluxKind k, double c, double u) {
    switch (k) {
        case FluxKind::burgers: return 0.5 * u * u;
        case FluxKind::linear: return c * u;
        case FluxKind::zero: return 0.0;
    }
    return 0.0;
}

static double flux_deriv_of(FluxKind k, double c, double u) {
    switch (k) {
        case FluxKind::burgers: return u;
        case FluxKind::linear: return c;
        case FluxKind::zero: return 0.0;
    }
    return 0.0;
}

double eval_flux(const FluxConfig& cfg, FluxComponent which, double u) {
    if (which == FluxComponent::f) return flux_of(cfg.f_kind, 0.0, u);
    return flux_of(cfg.g_kind, cfg.g_coeff, u);
}

double eval_flux_deriv(const FluxConfig& cfg, FluxComponent which, double u) {
    if (which == FluxComponent::f) return flux_deriv_of(cfg.f_kind, 0.0, u);
    return flux_deriv_of(cfg.g_kind, cfg.g_coeff, u);
}

double llf_flux(const FluxConfig& cfg, FluxComponent which, double uL, double uR, double a) {
    const double bound = std::max(std::fabs(eval_flux_deriv(cfg, which, uL)),
                                  std::fabs(eval_flux_deriv(cfg, which, uR)));
    ensure_num(a >= bound, "llf_flux: wave speed bound a is below |flux'| at the given states");
    return 0.5 * (eval_flux(cfg, which, uL) + eval_flux(cfg, which, uR)) - 0.5 * a * (uR - uL);
}

} // namespace radgas
