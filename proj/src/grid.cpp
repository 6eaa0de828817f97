#include "radgas/grid.hpp"

#include <cmath>

namespace radgas {

Grid Grid::half_strip(int nx, int ny, double lx, double ly) {
    ensure(nx >= 8, "grid: nx must be >= 8");
    ensure(ny >= 4, "grid: ny must be >= 4");
    ensure(lx > 0 && ly > 0, "grid: lx and ly must be positive");
    Grid g;
    g.nx = nx; g.ny = ny; g.lx = lx; g.ly = ly;
    g.dx = lx / nx; g.dy = ly / ny;
    g.periodic_x = false;
    return g;
}

Grid Grid::torus(int nx, int ny, double lx, double ly) {
    ensure(nx >= 8, "grid: nx must be >= 8");
    ensure(ny >= 4, "grid: ny must be >= 4");
    ensure(lx > 0 && ly > 0, "grid: lx and ly must be positive");
    Grid g;
    g.nx = nx; g.ny = ny; g.lx = lx; g.ly = ly;
    g.dx = lx / nx; g.dy = ly / ny;
    g.periodic_x = true;
    return g;
}

Grid make_grid(int nx, int ny, double lx, double ly) {
    return Grid::half_strip(nx, ny, lx, ly);
}

ScalarField ScalarField::from_fn(const Grid& g, const std::function<double(double, double)>& f) {
    ScalarField out(g);
    const int nxn = g.nxn();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < nxn; ++i)
            out.v[(long)j * nxn + i] = f(g.x(i), g.y(j));
    return out;
}

double ScalarField::max_abs() const {
    double m = 0;
    for (double a : v) m = std::max(m, std::fabs(a));
    return m;
}

bool ScalarField::all_finite() const {
    for (double a : v)
        if (!std::isfinite(a)) return false;
    return true;
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* where) {
    if (!a.grid.same_as(b.grid))
        throw ConfigError(std::string(where) + ": grid mismatch");
}

} // namespace radgas
