#include "radgas/elliptic.hpp"

#include <cmath>
#include <complex>

#include "radgas/fd.hpp"
#include "radgas/fft.hpp"
#include "radgas/parallel.hpp"

namespace radgas {

using cplx = std::complex<double>;

std::vector<double> compatibility_trace(const ScalarField& u, double fprime_wall) {
    const Grid& g = u.grid;
    const double i2h = 1.0 / (2.0 * g.dx);
    std::vector<double> t(g.ny);
    for (int j = 0; j < g.ny; ++j) {
        const double dux = (-3.0 * u.at(0, j) + 4.0 * u.at(1, j) - u.at(2, j)) * i2h;
        t[j] = -fprime_wall * dux;
    }
    return t;
}

ScalarField solve_screened(const ScalarField& u, const std::vector<double>& left_trace,
                           const std::vector<double>& right_trace) {
    const Grid& g = u.grid;
    ensure(!g.periodic_x, "solve_screened: half-strip grids only");
    ensure(is_pow2(g.ny), "solve_screened: ny must be a power of two");
    ensure((int)left_trace.size() == g.ny && (int)right_trace.size() == g.ny,
           "solve_screened: trace length must equal ny");
    const int nxn = g.nxn();
    const int ny = g.ny;

    // y-transform of u and the traces
    std::vector<cplx> uhat((long)ny * nxn);
    parallel_for(0, nxn, [&](int i0, int i1) {
        std::vector<cplx> buf(ny);
        for (int i = i0; i < i1; ++i) {
            for (int j = 0; j < ny; ++j) buf[j] = u.at(i, j);
            fft_inplace(buf, false);
            for (int k = 0; k < ny; ++k) uhat[(long)k * nxn + i] = buf[k];
        }
    });
    std::vector<cplx> lhat(left_trace.begin(), left_trace.end());
    std::vector<cplx> rhat(right_trace.begin(), right_trace.end());
    fft_inplace(lhat, false);
    fft_inplace(rhat, false);

    const double ihx2 = 1.0 / (g.dx * g.dx);
    std::vector<cplx> sol((long)ny * nxn);

    parallel_for(0, ny, [&](int k0, int k1) {
        std::vector<cplx> rhs(nxn), d(nxn), out(nxn);
        std::vector<double> diag(nxn);
        for (int k = k0; k < k1; ++k) {
            const double s = std::sin(M_PI * k / ny);
            const double kap2 = 4.0 / (g.dy * g.dy) * s * s; // stencil symbol of -d2/dy2
            const cplx* uk = &uhat[(long)k * nxn];
            cplx* rk = &sol[(long)k * nxn];
            // rows i=1..nx-1: (-1/dx^2) r_{i-1} + (1+kap2+2/dx^2) r_i + (-1/dx^2) r_{i+1}
            //              = -D2x u + kap2 u
            const double a = -ihx2;
            const double b = 1.0 + kap2 + 2.0 * ihx2;
            rk[0] = lhat[k];
            rk[nxn - 1] = rhat[k];
            for (int i = 1; i < nxn - 1; ++i)
                rhs[i] = -(uk[i + 1] - 2.0 * uk[i] + uk[i - 1]) * ihx2 + kap2 * uk[i];
            // fold Dirichlet ends into the rhs, then Thomas sweep
            rhs[1] -= a * rk[0];
            rhs[nxn - 2] -= a * rk[nxn - 1];
            diag[1] = b;
            d[1] = rhs[1];
            for (int i = 2; i < nxn - 1; ++i) {
                const double m = a / diag[i - 1];
                diag[i] = b - m * a;
                d[i] = rhs[i] - m * d[i - 1];
            }
            rk[nxn - 2] = d[nxn - 2] / diag[nxn - 2];
            for (int i = nxn - 3; i >= 1; --i) rk[i] = (d[i] - a * rk[i + 1]) / diag[i];
        }
    });

    ScalarField r(g);
    parallel_for(0, nxn, [&](int i0, int i1) {
        std::vector<cplx> buf(ny);
        for (int i = i0; i < i1; ++i) {
            for (int k = 0; k < ny; ++k) buf[k] = sol[(long)k * nxn + i];
            fft_inplace(buf, true);
            for (int j = 0; j < ny; ++j) r.at(i, j) = buf[j].real();
        }
    });
    return r;
}

ScalarField solve_divq_halfstrip(const ScalarField& u, const EllipticBC& bc, double far_value) {
    std::vector<double> left;
    if (bc.kind == EllipticBCKind::compatibility)
        left = compatibility_trace(u, bc.fprime_wall);
    else
        left.assign(u.grid.ny, 0.0);
    std::vector<double> right(u.grid.ny, far_value);
    return solve_screened(u, left, right);
}

ScalarField dense_direct_oracle(const ScalarField& u, const EllipticBC& bc, double far_value) {
    const Grid& g = u.grid;
    ensure(!g.periodic_x, "dense_direct_oracle: half-strip grids only");
    const long N = g.size();
    ensure(N <= 4096, "dense_direct_oracle: grid too large (max 4096 unknowns)");
    const int nxn = g.nxn();
    const int ny = g.ny;
    const double ihx2 = 1.0 / (g.dx * g.dx);
    const double ihy2 = 1.0 / (g.dy * g.dy);

    std::vector<double> left;
    if (bc.kind == EllipticBCKind::compatibility)
        left = compatibility_trace(u, bc.fprime_wall);
    else
        left.assign(ny, 0.0);

    std::vector<double> A((size_t)N * N, 0.0);
    std::vector<double> rhs(N, 0.0);
    auto idx = [&](int i, int j) { return (long)j * nxn + i; };

    for (int j = 0; j < ny; ++j) {
        const int jp = (j + 1 == ny) ? 0 : j + 1;
        const int jm = (j == 0) ? ny - 1 : j - 1;
        for (int i = 0; i < nxn; ++i) {
            const long row = idx(i, j);
            if (i == 0) {
                A[(size_t)row * N + row] = 1.0;
                rhs[row] = left[j];
            } else if (i == nxn - 1) {
                A[(size_t)row * N + row] = 1.0;
                rhs[row] = far_value;
            } else {
                A[(size_t)row * N + row] = 1.0 + 2.0 * ihx2 + 2.0 * ihy2;
                A[(size_t)row * N + idx(i - 1, j)] = -ihx2;
                A[(size_t)row * N + idx(i + 1, j)] = -ihx2;
                A[(size_t)row * N + idx(i, jm)] += -ihy2;
                A[(size_t)row * N + idx(i, jp)] += -ihy2;
                const double lap = (u.at(i + 1, j) - 2.0 * u.at(i, j) + u.at(i - 1, j)) * ihx2 +
                                   (u.at(i, jp) - 2.0 * u.at(i, j) + u.at(i, jm)) * ihy2;
                rhs[row] = -lap;
            }
        }
    }

    // pivoted elimination
    for (long c = 0; c < N; ++c) {
        long piv = c;
        double best = std::fabs(A[(size_t)c * N + c]);
        for (long rr = c + 1; rr < N; ++rr) {
            const double v = std::fabs(A[(size_t)rr * N + c]);
            if (v > best) { best = v; piv = rr; }
        }
        ensure_num(best > 0.0, "dense_direct_oracle: singular matrix");
        if (piv != c) {
            for (long cc = c; cc < N; ++cc) std::swap(A[(size_t)c * N + cc], A[(size_t)piv * N + cc]);
            std::swap(rhs[c], rhs[piv]);
        }
        const double ipiv = 1.0 / A[(size_t)c * N + c];
        parallel_for((int)c + 1, (int)N, [&](int r0, int r1) {
            for (long rr = r0; rr < r1; ++rr) {
                const double m = A[(size_t)rr * N + c] * ipiv;
                if (m == 0.0) continue;
                A[(size_t)rr * N + c] = 0.0;
                for (long cc = c + 1; cc < N; ++cc) A[(size_t)rr * N + cc] -= m * A[(size_t)c * N + cc];
                rhs[rr] -= m * rhs[c];
            }
        });
    }
    ScalarField r(g);
    for (long rr = N - 1; rr >= 0; --rr) {
        double s = rhs[rr];
        for (long cc = rr + 1; cc < N; ++cc) s -= A[(size_t)rr * N + cc] * r.v[cc];
        r.v[rr] = s / A[(size_t)rr * N + rr];
    }
    return r;
}

VectorField reconstruct_q(const ScalarField& u, const ScalarField& r) {
    require_same_grid(u, r, "reconstruct_q");
    VectorField q;
    ScalarField ux = ddx(u), uy = ddy(u), rx = ddx(r), ry = ddy(r);
    q.c1 = ScalarField(u.grid);
    q.c2 = ScalarField(u.grid);
    for (long n = 0; n < (long)u.v.size(); ++n) {
        q.c1.v[n] = rx.v[n] - ux.v[n];
        q.c2.v[n] = ry.v[n] - uy.v[n];
    }
    return q;
}

// ---- periodic spectral oracles ----

namespace {

struct Modes {
    int nx, ny;
    std::vector<cplx> a; // k2*nx + k1

    cplx& at(int k1, int k2) { return a[(long)k2 * nx + k1]; }
};

Modes fft2(const ScalarField& u) {
    const Grid& g = u.grid;
    ensure(g.periodic_x, "periodic oracle: torus grids only");
    ensure(is_pow2(g.nx) && is_pow2(g.ny), "periodic oracle: nx and ny must be powers of two");
    Modes m{g.nx, g.ny, std::vector<cplx>((long)g.nx * g.ny)};
    std::vector<cplx> buf(std::max(g.nx, g.ny));
    for (int j = 0; j < g.ny; ++j) { // transform rows (x)
        buf.assign(g.nx, 0.0);
        for (int i = 0; i < g.nx; ++i) buf[i] = u.at(i, j);
        fft_inplace(buf, false);
        for (int k = 0; k < g.nx; ++k) m.a[(long)j * g.nx + k] = buf[k];
    }
    for (int k1 = 0; k1 < g.nx; ++k1) { // transform columns (y)
        buf.assign(g.ny, 0.0);
        for (int j = 0; j < g.ny; ++j) buf[j] = m.a[(long)j * g.nx + k1];
        fft_inplace(buf, false);
        for (int k2 = 0; k2 < g.ny; ++k2) m.a[(long)k2 * g.nx + k1] = buf[k2];
    }
    return m;
}

ScalarField ifft2(const Grid& g, Modes m) {
    std::vector<cplx> buf(std::max(g.nx, g.ny));
    for (int k1 = 0; k1 < g.nx; ++k1) {
        buf.assign(g.ny, 0.0);
        for (int k2 = 0; k2 < g.ny; ++k2) buf[k2] = m.a[(long)k2 * g.nx + k1];
        fft_inplace(buf, true);
        for (int j = 0; j < g.ny; ++j) m.a[(long)j * g.nx + k1] = buf[j];
    }
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j) {
        buf.assign(g.nx, 0.0);
        for (int k1 = 0; k1 < g.nx; ++k1) buf[k1] = m.a[(long)j * g.nx + k1];
        fft_inplace(buf, true);
        for (int i = 0; i < g.nx; ++i) out.at(i, j) = buf[i].real();
    }
    return out;
}

double wavenumber(int k, int n, double len) {
    const int signed_k = (k <= n / 2) ? k : k - n;
    return 2.0 * M_PI * signed_k / len;
}

} // namespace

VectorField solve_q_periodic_oracle(const ScalarField& u) {
    const Grid& g = u.grid;
    Modes m = fft2(u);
    Modes m1 = m, m2 = m;
    for (int k2 = 0; k2 < g.ny; ++k2) {
        const double ky = wavenumber(k2, g.ny, g.ly);
        for (int k1 = 0; k1 < g.nx; ++k1) {
            const double kx = wavenumber(k1, g.nx, g.lx);
            const double den = 1.0 + kx * kx + ky * ky;
            const cplx uh = m.at(k1, k2);
            m1.at(k1, k2) = cplx(0.0, -kx) * uh / den;
            m2.at(k1, k2) = cplx(0.0, -ky) * uh / den;
        }
    }
    VectorField q;
    q.c1 = ifft2(g, std::move(m1));
    q.c2 = ifft2(g, std::move(m2));
    return q;
}

ScalarField divq_periodic_oracle(const ScalarField& u) {
    const Grid& g = u.grid;
    Modes m = fft2(u);
    for (int k2 = 0; k2 < g.ny; ++k2) {
        const double ky = wavenumber(k2, g.ny, g.ly);
        for (int k1 = 0; k1 < g.nx; ++k1) {
            const double kx = wavenumber(k1, g.nx, g.lx);
            const double kk = kx * kx + ky * ky;
            m.at(k1, k2) *= kk / (1.0 + kk);
        }
    }
    return ifft2(g, std::move(m));
}

double oracle_residual_spectral(const ScalarField& u, const VectorField& q) {
    const Grid& g = u.grid;
    Modes mu = fft2(u), m1 = fft2(q.c1), m2 = fft2(q.c2);
    double worst = 0;
    const double scale = 1.0 / ((double)g.nx * g.ny);
    for (int k2 = 0; k2 < g.ny; ++k2) {
        const double ky = wavenumber(k2, g.ny, g.ly);
        for (int k1 = 0; k1 < g.nx; ++k1) {
            const double kx = wavenumber(k1, g.nx, g.lx);
            const cplx div = cplx(0.0, kx) * m1.at(k1, k2) + cplx(0.0, ky) * m2.at(k1, k2);
            const cplx r1 = cplx(0.0, kx) * (-div) + m1.at(k1, k2) + cplx(0.0, kx) * mu.at(k1, k2);
            const cplx r2 = cplx(0.0, ky) * (-div) + m2.at(k1, k2) + cplx(0.0, ky) * mu.at(k1, k2);
            worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)) * scale);
        }
    }
    return worst;
}

std::vector<MmsRow> elliptic_mms_table(int levels) {
    ensure(levels >= 1 && levels <= 8, "elliptic_mms_table: levels in [1,8]");
    const double len = 2.0 * M_PI; // square cells, wavenumber k=2 fits the period
    const double kwave = 2.0, c = (kwave * kwave - 1.0) / (kwave * kwave);
    std::vector<MmsRow> rows;
    int n = 32;
    for (int lev = 0; lev < levels; ++lev, n *= 2) {
        const Grid g = Grid::half_strip(n, n, len, len);
        const ScalarField u = ScalarField::from_fn(
            g, [&](double x, double y) { return std::exp(-x) * std::cos(kwave * y); });
        std::vector<double> left(g.ny), right(g.ny);
        for (int j = 0; j < g.ny; ++j) {
            left[j] = c * std::cos(kwave * g.y(j));
            right[j] = c * std::exp(-g.lx) * std::cos(kwave * g.y(j));
        }
        const ScalarField r = solve_screened(u, left, right);
        double err = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nxn(); ++i)
                err = std::max(err,
                               std::fabs(r.at(i, j) - c * std::exp(-g.x(i)) * std::cos(kwave * g.y(j))));
        MmsRow row;
        row.h = g.dx;
        row.max_error = err;
        row.ratio = rows.empty() ? 0.0 : rows.back().max_error / err;
        rows.push_back(row);
    }
    return rows;
}

double halfstrip_residual(const ScalarField& u, const ScalarField& r) {
    require_same_grid(u, r, "halfstrip_residual");
    const Grid& g = u.grid;
    const int nxn = g.nxn();
    const double ihx2 = 1.0 / (g.dx * g.dx);
    const double ihy2 = 1.0 / (g.dy * g.dy);
    double worst = 0, rhs_scale = 0;
    for (int j = 0; j < g.ny; ++j) {
        const int jp = (j + 1 == g.ny) ? 0 : j + 1;
        const int jm = (j == 0) ? g.ny - 1 : j - 1;
        for (int i = 1; i < nxn - 1; ++i) {
            const double lap_u = (u.at(i + 1, j) - 2.0 * u.at(i, j) + u.at(i - 1, j)) * ihx2 +
                                 (u.at(i, jp) - 2.0 * u.at(i, j) + u.at(i, jm)) * ihy2;
            const double lap_r = (r.at(i + 1, j) - 2.0 * r.at(i, j) + r.at(i - 1, j)) * ihx2 +
                                 (r.at(i, jp) - 2.0 * r.at(i, j) + r.at(i, jm)) * ihy2;
            worst = std::max(worst, std::fabs(r.at(i, j) - lap_r + lap_u));
            rhs_scale = std::max(rhs_scale, std::fabs(lap_u));
        }
    }
    return worst / std::max(1.0, rhs_scale);
}

} // namespace radgas
