#pragma once
#include "radgas/grid.hpp"

namespace radgas {

// Second-order stencils. x uses one-sided closures at the strip edges (central with
// wraparound on torus grids); y is always periodic central.
ScalarField ddx(const ScalarField& f);
ScalarField ddy(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);

// d^a/dx^a d^b/dy^b by repeated application.
ScalarField dxa_dyb(const ScalarField& f, int a, int b);

// Quadrature of (1+x)^alpha * f: trapezoid in x (rectangle on torus), rectangle in y.
double integrate2d(const ScalarField& f, double alpha);

BoundaryTrace wall_trace(const ScalarField& f);

// 1D helpers on uniformly spaced samples (used by the stationary profile machinery).
std::vector<double> deriv1_1d(const std::vector<double>& f, double h);           // 2nd order
std::vector<double> deriv1_1d_o4(const std::vector<double>& f, double h);        // 4th order
// 4th-order second derivative at one interior index (needs 2 <= i <= n-3).
double deriv2_at_o4(const std::vector<double>& f, double h, int i);

} // namespace radgas
