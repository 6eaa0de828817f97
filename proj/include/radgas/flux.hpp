#pragma once
#include "radgas/errors.hpp"

namespace radgas {

enum class FluxKind { burgers, linear, zero };

// f is the x-flux (must be the convex burgers flux u^2/2, normalized f(0)=f'(0)=0,
// f'' >= kappa); g is the y-flux and may be burgers, c*u, or 0.
struct FluxConfig {
    FluxKind f_kind = FluxKind::burgers;
    FluxKind g_kind = FluxKind::burgers;
    double g_coeff = 0.0; // only for g_kind == linear
    double kappa = 1.0;   // convexity floor of f

    void validate() const;
};

enum class FluxComponent { f, g };

double eval_flux(const FluxConfig& cfg, FluxComponent which, double u);
double eval_flux_deriv(const FluxConfig& cfg, FluxComponent which, double u);

// Monotone two-point flux: (flux(uL)+flux(uR))/2 - a/2*(uR-uL).
// a must dominate |flux'| at both states.
double llf_flux(const FluxConfig& cfg, FluxComponent which, double uL, double uR, double a);

} // namespace radgas
