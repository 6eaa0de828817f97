#pragma once
#include "radgas/grid.hpp"

namespace radgas {

enum class EllipticBCKind { compatibility, homogeneous };

struct EllipticBC {
    EllipticBCKind kind = EllipticBCKind::compatibility;
    double fprime_wall = 0.0; // f'(u_minus); compatibility trace is -f'(u_minus)*du/dx|_wall
};

// Screened Poisson solve for r = div q on the half strip:
//   (I - Lap_h) r = -Lap_h u,  r(0,y) and r(lx,y) prescribed.
// Fast path: y-transform (stencil symbol per mode) + tridiagonal solves in x.
ScalarField solve_screened(const ScalarField& u, const std::vector<double>& left_trace,
                           const std::vector<double>& right_trace);

// Wall trace from bc (compatibility or homogeneous), far trace = far_value on every
// y node (i.e. far_value on the zero y-mode, zero on the rest).
ScalarField solve_divq_halfstrip(const ScalarField& u, const EllipticBC& bc, double far_value);

// Same operator assembled densely and solved by pivoted elimination; grids up to
// 4096 unknowns. Oracle for the fast path.
ScalarField dense_direct_oracle(const ScalarField& u, const EllipticBC& bc, double far_value);

// q = grad(r) - grad(u) with the second-order stencils.
VectorField reconstruct_q(const ScalarField& u, const ScalarField& r);

// Fully periodic spectral inversions (true wavenumbers), oracle-grade on torus grids.
VectorField solve_q_periodic_oracle(const ScalarField& u);
ScalarField divq_periodic_oracle(const ScalarField& u);

// Max spectral residual of -grad(div q) + q + grad(u) over all modes (torus).
double oracle_residual_spectral(const ScalarField& u, const VectorField& q);

// Max residual of the discrete (I - Lap_h) r = -Lap_h u equation at interior x nodes,
// relative to max(1, |Lap_h u|_inf).
double halfstrip_residual(const ScalarField& u, const ScalarField& r);

std::vector<double> compatibility_trace(const ScalarField& u, double fprime_wall);

// Manufactured-solution convergence study: u = e^{-x} cos(2y) on a square strip
// with exact Dirichlet traces; the solved r must approach ((k^2-1)/k^2) u at
// second order, so the error ratio under grid halving sits near 4.
struct MmsRow {
    double h = 0, max_error = 0, ratio = 0; // ratio vs the previous (coarser) row
};
std::vector<MmsRow> elliptic_mms_table(int levels);

} // namespace radgas
