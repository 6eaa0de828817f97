#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radgas/elliptic.hpp"
#include "radgas/fd.hpp"

using namespace radgas;

namespace {

ScalarField smooth_strip_field(const Grid& g) {
    return ScalarField::from_fn(g, [&](double x, double y) {
        const double bump = std::exp(-0.5 * (x - 0.45 * g.lx) * (x - 0.45 * g.lx));
        return bump * (1.0 + 0.3 * std::sin(2.0 * M_PI * y / g.ly) +
                       0.2 * std::cos(4.0 * M_PI * y / g.ly));
    });
}

} // namespace

TEST_CASE("fast half-strip solve equals the dense direct oracle") {
    for (int ny : {8, 32}) {
        const Grid g = make_grid(32, ny, 10.0, 4.0);
        const ScalarField u = smooth_strip_field(g);
        for (EllipticBCKind kind : {EllipticBCKind::compatibility, EllipticBCKind::homogeneous}) {
            const EllipticBC bc{kind, -1.0};
            const ScalarField fast = solve_divq_halfstrip(u, bc, 1e-4);
            const ScalarField dense = dense_direct_oracle(u, bc, 1e-4);
            double worst = 0;
            for (long k = 0; k < g.size(); ++k)
                worst = std::max(worst, std::fabs(fast.v[k] - dense.v[k]));
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("interior equation residual is at round-off") {
    const Grid g = make_grid(48, 16, 12.0, 5.0);
    const ScalarField u = smooth_strip_field(g);
    const ScalarField r = solve_divq_halfstrip(u, {EllipticBCKind::compatibility, -1.0}, 0.0);
    CHECK(halfstrip_residual(u, r) < 1e-12);
}

TEST_CASE("solver is linear in the data") {
    const Grid g = make_grid(24, 8, 8.0, 3.0);
    const ScalarField u1 = smooth_strip_field(g);
    const ScalarField u2 = ScalarField::from_fn(g, [&](double x, double y) {
        return std::sin(x) * std::exp(-0.2 * x) * std::cos(2.0 * M_PI * y / g.ly);
    });
    const EllipticBC bc{EllipticBCKind::homogeneous, 0.0};
    ScalarField sum(g);
    for (long k = 0; k < g.size(); ++k) sum.v[k] = 2.0 * u1.v[k] - 3.0 * u2.v[k];
    const ScalarField ra = solve_divq_halfstrip(sum, bc, 0.0);
    const ScalarField r1 = solve_divq_halfstrip(u1, bc, 0.0);
    const ScalarField r2 = solve_divq_halfstrip(u2, bc, 0.0);
    for (long k = 0; k < g.size(); ++k)
        CHECK(ra.v[k] == doctest::Approx(2.0 * r1.v[k] - 3.0 * r2.v[k]).epsilon(1e-11));
}

TEST_CASE("manufactured solution converges at second order") {
    const auto rows = elliptic_mms_table(3);
    REQUIRE(rows.size() == 3);
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].ratio > 3.5);
        CHECK(rows[i].ratio < 4.5);
    }
}

TEST_CASE("compatibility trace matches -f'(u-) du/dx at the wall") {
    const Grid g = make_grid(64, 8, 16.0, 4.0);
    const ScalarField u = ScalarField::from_fn(g, [&](double x, double y) {
        return -1.0 + 0.5 * (1.0 - std::exp(-x)) + 0.01 * std::sin(2.0 * M_PI * y / g.ly);
    });
    const std::vector<double> tr = compatibility_trace(u, -1.0);
    const ScalarField ux = ddx(u);
    REQUIRE((int)tr.size() == g.ny);
    for (int j = 0; j < g.ny; ++j)
        CHECK(tr[j] == doctest::Approx(1.0 * ux.at(0, j)).epsilon(1e-13));
}

TEST_CASE("reconstructed flux has curl-free perturbation structure") {
    const Grid g = make_grid(96, 32, 20.0, 8.0);
    const ScalarField u = smooth_strip_field(g);
    const ScalarField r = solve_divq_halfstrip(u, {EllipticBCKind::compatibility, -1.0}, 0.0);
    const VectorField q = reconstruct_q(u, r);
    const ScalarField curl1 = ddy(q.c1);
    const ScalarField curl2 = ddx(q.c2);
    double worst = 0;
    for (long k = 0; k < g.size(); ++k)
        worst = std::max(worst, std::fabs(curl1.v[k] - curl2.v[k]));
    // q = grad(r - u); mixed second differences commute to round-off
    CHECK(worst < 1e-12);
}

TEST_CASE("periodic spectral oracle: explicit single-mode solution") {
    const Grid t = Grid::torus(32, 32, 2.0 * M_PI, 2.0 * M_PI);
    const ScalarField u = ScalarField::from_fn(
        t, [](double x, double y) { return std::cos(x) * std::cos(y); });
    // |k|^2 = 2: q1 = (1/3) sin x cos y, q2 = (1/3) cos x sin y, r = (2/3) cos x cos y
    const VectorField q = solve_q_periodic_oracle(u);
    const ScalarField r = divq_periodic_oracle(u);
    double w1 = 0, w2 = 0, wr = 0;
    for (int j = 0; j < t.ny; ++j)
        for (int i = 0; i < t.nxn(); ++i) {
            w1 = std::max(w1, std::fabs(q.c1.at(i, j) -
                                        std::sin(t.x(i)) * std::cos(t.y(j)) / 3.0));
            w2 = std::max(w2, std::fabs(q.c2.at(i, j) -
                                        std::cos(t.x(i)) * std::sin(t.y(j)) / 3.0));
            wr = std::max(wr, std::fabs(r.at(i, j) -
                                        2.0 * std::cos(t.x(i)) * std::cos(t.y(j)) / 3.0));
        }
    CHECK(w1 < 1e-13);
    CHECK(w2 < 1e-13);
    CHECK(wr < 1e-13);
    CHECK(oracle_residual_spectral(u, q) < 1e-12);
}

TEST_CASE("periodic oracle keeps the mean of div q at zero") {
    const Grid t = Grid::torus(64, 16, 7.0, 3.0);
    const ScalarField u = ScalarField::from_fn(t, [&](double x, double y) {
        return -0.5 + 0.2 * std::sin(2.0 * M_PI * x / t.lx) * std::cos(2.0 * M_PI * y / t.ly) +
               0.1 * std::cos(4.0 * M_PI * x / t.lx);
    });
    const ScalarField r = divq_periodic_oracle(u);
    double mean = 0;
    for (double v : r.v) mean += v;
    CHECK(std::fabs(mean / (double)t.size()) < 1e-15);
}

TEST_CASE("far Dirichlet data lands on the boundary nodes") {
    const Grid g = make_grid(16, 8, 6.0, 2.0);
    const ScalarField u = smooth_strip_field(g);
    const double far = 3.25e-3;
    const ScalarField r = solve_divq_halfstrip(u, {EllipticBCKind::homogeneous, 0.0}, far);
    for (int j = 0; j < g.ny; ++j) {
        CHECK(r.at(0, j) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(r.at(g.nxn() - 1, j) == doctest::Approx(far).epsilon(1e-12));
    }
}

TEST_CASE("dense oracle grid-size guard") {
    const Grid g = make_grid(128, 64, 10.0, 4.0); // 129*64 > 4096 unknowns
    const ScalarField u(g);
    CHECK_THROWS_AS(dense_direct_oracle(u, {EllipticBCKind::homogeneous, 0.0}, 0.0), ConfigError);
}
