#include "radgas/fd.hpp"

#include <cmath>

#include "radgas/parallel.hpp"

namespace radgas {

ScalarField ddx(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const int nxn = g.nxn();
    const double i2h = 1.0 / (2.0 * g.dx);
    parallel_for(0, g.ny, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            const double* r = &f.v[(long)j * nxn];
            double* o = &out.v[(long)j * nxn];
            if (g.periodic_x) {
                for (int i = 0; i < nxn; ++i) {
                    const int ip = (i + 1 == nxn) ? 0 : i + 1;
                    const int im = (i == 0) ? nxn - 1 : i - 1;
                    o[i] = (r[ip] - r[im]) * i2h;
                }
            } else {
                o[0] = (-3.0 * r[0] + 4.0 * r[1] - r[2]) * i2h;
                for (int i = 1; i < nxn - 1; ++i) o[i] = (r[i + 1] - r[i - 1]) * i2h;
                o[nxn - 1] = (3.0 * r[nxn - 1] - 4.0 * r[nxn - 2] + r[nxn - 3]) * i2h;
            }
        }
    });
    return out;
}

ScalarField ddy(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const int nxn = g.nxn();
    const double i2h = 1.0 / (2.0 * g.dy);
    parallel_for(0, g.ny, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            const int jp = (j + 1 == g.ny) ? 0 : j + 1;
            const int jm = (j == 0) ? g.ny - 1 : j - 1;
            const double* rp = &f.v[(long)jp * nxn];
            const double* rm = &f.v[(long)jm * nxn];
            double* o = &out.v[(long)j * nxn];
            for (int i = 0; i < nxn; ++i) o[i] = (rp[i] - rm[i]) * i2h;
        }
    });
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const int nxn = g.nxn();
    const double ihx2 = 1.0 / (g.dx * g.dx);
    const double ihy2 = 1.0 / (g.dy * g.dy);
    parallel_for(0, g.ny, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            const int jp = (j + 1 == g.ny) ? 0 : j + 1;
            const int jm = (j == 0) ? g.ny - 1 : j - 1;
            const double* r = &f.v[(long)j * nxn];
            const double* rp = &f.v[(long)jp * nxn];
            const double* rm = &f.v[(long)jm * nxn];
            double* o = &out.v[(long)j * nxn];
            for (int i = 0; i < nxn; ++i) {
                double fxx;
                if (g.periodic_x) {
                    const int ip = (i + 1 == nxn) ? 0 : i + 1;
                    const int im = (i == 0) ? nxn - 1 : i - 1;
                    fxx = (r[ip] - 2.0 * r[i] + r[im]) * ihx2;
                } else if (i == 0) {
                    fxx = (2.0 * r[0] - 5.0 * r[1] + 4.0 * r[2] - r[3]) * ihx2;
                } else if (i == nxn - 1) {
                    fxx = (2.0 * r[nxn - 1] - 5.0 * r[nxn - 2] + 4.0 * r[nxn - 3] - r[nxn - 4]) * ihx2;
                } else {
                    fxx = (r[i + 1] - 2.0 * r[i] + r[i - 1]) * ihx2;
                }
                const double fyy = (rp[i] - 2.0 * r[i] + rm[i]) * ihy2;
                o[i] = fxx + fyy;
            }
        }
    });
    return out;
}

ScalarField dxa_dyb(const ScalarField& f, int a, int b) {
    ScalarField cur = f;
    for (int k = 0; k < b; ++k) cur = ddy(cur);
    for (int k = 0; k < a; ++k) cur = ddx(cur);
    return cur;
}

double integrate2d(const ScalarField& f, double alpha) {
    const Grid& g = f.grid;
    const int nxn = g.nxn();
    // x weights: trapezoid halves the strip edges; rectangle everywhere on a torus.
    double total = 0;
    for (int j = 0; j < g.ny; ++j) {
        const double* r = &f.v[(long)j * nxn];
        double row = 0;
        for (int i = 0; i < nxn; ++i) {
            double w = (!g.periodic_x && (i == 0 || i == nxn - 1)) ? 0.5 : 1.0;
            if (alpha != 0.0) w *= std::pow(1.0 + g.x(i), alpha);
            row += w * r[i];
        }
        total += row;
    }
    return total * g.dx * g.dy;
}

BoundaryTrace wall_trace(const ScalarField& f) {
    BoundaryTrace t;
    t.v.resize(f.grid.ny);
    for (int j = 0; j < f.grid.ny; ++j) t.v[j] = f.at(0, j);
    return t;
}

std::vector<double> deriv1_1d(const std::vector<double>& f, double h) {
    const int n = (int)f.size();
    ensure(n >= 4, "deriv1_1d: need at least 4 samples");
    std::vector<double> d(n);
    const double i2h = 1.0 / (2.0 * h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * i2h;
    for (int i = 1; i < n - 1; ++i) d[i] = (f[i + 1] - f[i - 1]) * i2h;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * i2h;
    return d;
}

std::vector<double> deriv1_1d_o4(const std::vector<double>& f, double h) {
    const int n = (int)f.size();
    ensure(n >= 6, "deriv1_1d_o4: need at least 6 samples");
    std::vector<double> d(n);
    const double i12h = 1.0 / (12.0 * h);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * i12h;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * i12h;
    for (int i = 2; i < n - 2; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * i12h;
    d[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]) * i12h;
    d[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]) * i12h;
    return d;
}

double deriv2_at_o4(const std::vector<double>& f, double h, int i) {
    ensure(i >= 2 && i + 2 < (int)f.size(), "deriv2_at_o4: index too close to the edge");
    return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
}

} // namespace radgas
