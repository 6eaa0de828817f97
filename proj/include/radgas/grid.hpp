#pragma once
#include <functional>
#include <vector>

#include "radgas/errors.hpp"

namespace radgas {

// Half-strip grid: x nodes i=0..nx (x0 = 0 exactly, x_nx = lx), y nodes j=0..ny-1
// on a period (node ny would alias node 0). Torus grids are periodic in x too,
// so they drop the duplicate x node and hold nx*ny values.
struct Grid {
    int nx = 0, ny = 0;
    double lx = 0, ly = 0;
    double dx = 0, dy = 0;
    bool periodic_x = false;

    static Grid half_strip(int nx, int ny, double lx, double ly);
    static Grid torus(int nx, int ny, double lx, double ly);

    int nxn() const { return periodic_x ? nx : nx + 1; }
    double x(int i) const { return i * dx; }
    double y(int j) const { return j * dy; }
    long size() const { return (long)nxn() * ny; }

    bool same_as(const Grid& o) const {
        return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly && periodic_x == o.periodic_x;
    }
};

Grid make_grid(int nx, int ny, double lx, double ly); // half-strip, validated

struct ScalarField {
    Grid grid;
    std::vector<double> v; // index j*nxn + i (x fastest, matches checkpoint layout)

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), v(g.size(), 0.0) {}

    double& at(int i, int j) { return v[(long)j * grid.nxn() + i]; }
    double at(int i, int j) const { return v[(long)j * grid.nxn() + i]; }

    static ScalarField from_fn(const Grid& g, const std::function<double(double, double)>& f);

    double max_abs() const;
    bool all_finite() const;
};

struct VectorField {
    ScalarField c1, c2;
};

// Trace of a field along the wall x=0, one value per y node.
struct BoundaryTrace {
    std::vector<double> v;
};

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* where);

} // namespace radgas
