#pragma once
#include <vector>

#include "radgas/flux.hpp"

namespace radgas {

// Outflow endpoint pair: u_minus < u_plus <= 0.
struct EndpointStates {
    double u_minus = -1.0;
    double u_plus = -0.2;

    void validate() const;
    double delta() const { return u_plus - u_minus; }
};

enum class ProfileCase { nondegenerate, degenerate };

ProfileCase classify_case(const EndpointStates& ep); // degenerate iff u_plus == 0

// Decay rate lambda > 0 of the far-field linearization: negative root of
// f'(u+) mu^2 + mu - f'(u+) = 0. Nondegenerate case only.
double linearized_nd_rate(const FluxConfig& flux, const EndpointStates& ep);

// qbar = f(u+) - f(ubar), the first integral of the stationary system.
std::vector<double> first_integral_qbar(const FluxConfig& flux, const EndpointStates& ep,
                                        const std::vector<double>& ubar);

struct StationaryProfile {
    EndpointStates endpoints;
    FluxConfig flux;
    ProfileCase case_tag = ProfileCase::nondegenerate;
    double lx = 0, dx = 0;
    int n = 0; // cells; n+1 nodes
    std::vector<double> x, ubar, qbar;
    std::vector<double> d1, d2, d3, d4; // d/dx^k of ubar

    double d1qbar(int i) const; // -f'(ubar)*ubar_x, the exact derivative of qbar
    double far_r() const;       // d1qbar at the far edge (elliptic far Dirichlet value)
};

// Builds the monotone connection ubar(0)=u_minus -> u_plus on [0, lx] with n cells.
// The orbit is integrated in reverse x from the far state's local (stable) manifold,
// where it is transversally attracting, and translated so the u_minus crossing sits
// exactly at x=0. tol controls the adaptive RK4 local error and the crossing search.
StationaryProfile shoot_profile(const FluxConfig& flux, const EndpointStates& ep,
                                double lx, int n, double tol);

// Profile on an nx-cell grid for any nx >= 8: shoots on the coarsest power-of-two
// refinement with >= 512 cells and keeps every stride-th node.
StationaryProfile profile_for_grid(const FluxConfig& flux, const EndpointStates& ep,
                                   double lx, int nx, double tol);

// Least-squares decay diagnostics over the trailing half of [0, lx], skipping values
// below a 1e-12 floor. Nondegenerate: slope of log|d^k(ubar - u+)| vs x (~ -lambda).
// Degenerate: slope of log|d^k ubar| vs log(1 + delta*x) (~ -(k+1)).
double verify_profile_decay(const StationaryProfile& p, int k);

// Independent residual monitors (4th-order differencing of qbar, so the stencil
// truncation stays below the 1e-6 acceptance threshold on the reference grids).
double first_integral_residual(const StationaryProfile& p);
double ode_residual_max(const StationaryProfile& p);      // |-qbar_xx + qbar + ubar_x|
double wall_identity_residual(const StationaryProfile& p); // |qbar_x(0) + f'(u-)*ubar_x(0)|

} // namespace radgas
