#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alg/spectral_laplace.hpp"

#include <cmath>

using namespace alg;

namespace {

std::shared_ptr<const FlatTorusBasis> square(double cutoff = 4 * pi * pi * 2)
{
    return std::make_shared<const FlatTorusBasis>(std::vector<double>{1, 1}, cutoff);
}

VectorXcd bump(const RadialGrid& g, double c, double w)
{
    VectorXcd f = VectorXcd::Zero(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const double x = (std::log(g.node(i)) - std::log(c)) / w;
        if (std::abs(x) < 1) f(i) = std::pow(1 - x * x, 12);
    }
    return f;
}

} // namespace

TEST_CASE("radial grid differentiates smooth functions")
{
    const auto g = make_grid(1, 100, 256);
    VectorXd v(g->size());
    for (int i = 0; i < g->size(); ++i) v(i) = std::log(g->node(i)) + 1 / g->node(i);
    const VectorXd d1 = g->derivative(v, 1), d2 = g->derivative(v, 2);
    for (int i = g->interior_begin(); i < g->interior_end(); ++i) {
        const double r = g->node(i);
        CHECK(d1(i) == doctest::Approx(1 / r - 1 / (r * r)).epsilon(1e-9));
        CHECK(d2(i) == doctest::Approx(-1 / (r * r) + 2 / (r * r * r)).epsilon(1e-8));
    }
    CHECK(g->interpolate(v, 7.3) == doctest::Approx(std::log(7.3) + 1 / 7.3).epsilon(1e-11));
    CHECK_THROWS_AS(make_grid(0.5, 10, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 10, 8), std::invalid_argument);
}

TEST_CASE("quadrature over a grid sub-interval")
{
    const auto g = make_grid(1, 10, 64);
    const RadialQuadrature q(*g, 2.5, 7.25);
    VectorXd v(g->size());
    for (int i = 0; i < g->size(); ++i) v(i) = g->node(i) * g->node(i);
    double s = 0;
    for (int j = 0; j < q.size(); ++j) s += q.weight(j) * q.sample(v, j);
    CHECK(s == doctest::Approx((std::pow(7.25, 3) - std::pow(2.5, 3)) / 3).epsilon(1e-12));
}

TEST_CASE("Green solve against quadrature of the Bessel Green function")
{
    const auto basis = square();
    const auto g = make_grid(1, 1000, 512);
    // k = 1, mu = 4 pi^2: u = -(K int_1^r I f s + I int_r^inf K f s) + c K, u(1) = 0 (mpmath, 30 digits)
    const double r_b[] = {1.5, 2.0, 3.0, 4.0, 6.0};
    const double u_b[] = {-0.000062052517638216108916, -0.0012378408657074722556, -0.022655599490162102059,
                          -0.0035030103144237976149, -4.2913296952614592425e-8};
    const auto m = basis->mode(1, 1);
    const auto sol = mode_greens_solve(m, RadialProfile(m, g, bump(*g, 3, 0.7)), 0);
    CHECK(sol.residual < 1e-6);
    for (int j = 0; j < 5; ++j) {
        CAPTURE(r_b[j]);
        CHECK(std::abs(g->interpolate(sol.u.values, r_b[j]) - u_b[j]) < 1e-9);
    }
    // k = 2, mu = 0: pair r^2, r^-2
    const double u_p[] = {-0.15682924275736229107, -0.32570196472359872597, -0.64652915212239932549,
                          -0.49870751803506832928, -0.22339561561043929349};
    const auto m2 = basis->mode(2, 0);
    const auto sol2 = mode_greens_solve(m2, RadialProfile(m2, g, bump(*g, 3, 0.7)), 0);
    CHECK(sol2.residual < 1e-6);
    for (int j = 0; j < 5; ++j) CHECK(std::abs(g->interpolate(sol2.u.values, r_b[j]) - u_p[j]) < 1e-8);
}

TEST_CASE("boundary value and decay of harmonic modes")
{
    const auto basis = square();
    const auto g = make_grid(1, 1000, 512);
    const auto h = harmonic_mode(basis->mode(3, 0), 2.0, g);
    for (int i = 0; i < g->size(); i += 37) CHECK(std::abs(h.values(i) - 2.0 * std::pow(g->node(i), -3)) < 1e-14);
    const auto e = harmonic_mode(basis->mode(0, 1), 1.0, g);
    CHECK(std::abs(e.values(0) - 1.0) < 1e-15);
    // exp(-2 pi (r - 1)) K_0 ratio behaviour: monotone decay
    for (int i = 1; i < 50; ++i) CHECK(std::abs(e.values(i)) < std::abs(e.values(i - 1)));
    const auto sol = mode_greens_solve(basis->mode(2, 0), RadialProfile(basis->mode(2, 0), g), 0.5);
    CHECK(std::abs(sol.u.values(0) - 0.5) < 1e-14);
}

TEST_CASE("zero mode branches")
{
    const auto basis = square();
    const auto g = make_grid(1, 1000, 512);
    const auto m = basis->mode(0, 0);
    const RadialProfile f(m, g, bump(*g, 30, 0.7));
    GreenOptions newton;
    newton.zero_mode = ZeroModeBranch::newtonian;
    CHECK_THROWS_AS(mode_greens_solve(m, f, 0, newton), LogGrowthObstruction);
    newton.require_bounded = false;
    const auto grow = mode_greens_solve(m, f, 0, newton);
    CHECK(grow.residual < 1e-6);
    const auto bounded = mode_greens_solve(m, f, 0);
    CHECK(bounded.residual < 1e-6);
    CHECK(std::abs(bounded.u.values(g->size() - 1) - bounded.u.values(g->size() - 20)) < 1e-9);
}

TEST_CASE("solve_full is the mode-wise solve plus boundary data")
{
    const auto basis = square();
    const auto g = make_grid(1, 1000, 256);
    SpectralField rhs(basis, g);
    rhs.set(basis->mode(1, 1), bump(*g, 10, 0.7));
    rhs.set(basis->mode(-1, 4), bump(*g, 10, 0.7));
    BoundarySlice b{{basis->mode(2, 0), 1.0}};
    const auto u = solve_full(rhs, b, {}, 2);
    CHECK(u.modes().size() == 3);
    const auto single = mode_greens_solve(basis->mode(1, 1), rhs.profile(basis->mode(1, 1)), 0);
    CHECK((u.values(basis->mode(1, 1)) - single.u.values).cwiseAbs().maxCoeff() == 0);
    CHECK(std::abs(u.values(basis->mode(2, 0))(0) - 1.0) < 1e-14);
}

TEST_CASE("sector norm of a single mode is 1/(pi R) of the annulus norm")
{
    const auto basis = square();
    const auto g = make_grid(1, 2000, 512);
    for (double R : {10.0, 100.0, 1000.0}) {
        SpectralField f(basis, g);
        VectorXcd v(g->size());
        for (int i = 0; i < g->size(); ++i) v(i) = std::exp(-0.001 * g->node(i)) * cplx(1, 0.5);
        f.set(basis->mode(3, 2), v);
        const double s = sector_norm(f, R, 1 / R, 0.4), a = annulus_norm(f, R - 1, R + 1, 0);
        CHECK(s * s / (a * a) == doctest::Approx(1 / (pi * R)).epsilon(1e-10));
    }
}

TEST_CASE("sector norm with interfering modes can exceed the single-mode ratio")
{
    const auto basis = square();
    const auto g = make_grid(1, 200, 256);
    SpectralField f(basis, g);
    const VectorXcd one = VectorXcd::Ones(g->size());
    f.set(basis->mode(0, 1), one);
    f.set(basis->mode(1, 1), one);
    const double R = 50;
    const double s = sector_norm(f, R, 1 / R, 0), a = annulus_norm(f, R - 1, R + 1, 0);
    CHECK(s <= a);
    CHECK(s * s / (a * a) > 1 / (pi * R));
}

TEST_CASE("weighted seminorm is homogeneous")
{
    const auto basis = square();
    const auto g = make_grid(1, 50, 128);
    SpectralField f(basis, g);
    VectorXcd v(g->size());
    for (int i = 0; i < g->size(); ++i) v(i) = 1 / g->node(i);
    f.set(basis->mode(1, 0), v);
    const double a = weighted_holder_seminorm(f, 1, 2);
    CHECK(a > 0);
    CHECK(weighted_holder_seminorm(2.0 * f, 1, 2) == doctest::Approx(2 * a).epsilon(1e-14));
    CHECK(weighted_holder_seminorm(f.empty_like(), 1, 2) == 0);
    CHECK_THROWS_AS(weighted_holder_seminorm(f, 1, 5), std::invalid_argument);
}

TEST_CASE("Neumann constant of A(1,2) against the Bessel cross-product root")
{
    // smallest positive root: k = 1, lambda^2 = 0.45878406385438651952 (mpmath findroot of
    // J1'(l) Y1'(2l) - J1'(2l) Y1'(l))
    const double exact = 1 / 0.45878406385438651952;
    CHECK(neumann_poincare_annulus(1, 2, 16) == doctest::Approx(exact).epsilon(1e-4));
    CHECK(1 / neumann_eigenvalue_dense(1, 2, 24, 36) == doctest::Approx(exact).epsilon(1e-2));
}

TEST_CASE("mean-subtracted Poincare check")
{
    const auto basis = square();
    const auto g = make_grid(1, 2, 64, Spacing::uniform);
    const double P_A = neumann_poincare_annulus(1, 2, 16);
    SpectralField c(basis, g);
    c.set(basis->mode(0, 0), VectorXcd::Constant(g->size(), 3.0));
    SpectralField w(basis, g);
    VectorXcd v(g->size());
    for (int i = 0; i < g->size(); ++i) v(i) = std::cos(pi * (g->node(i) - 1));
    w.set(basis->mode(0, 0), v);
    w.set(basis->mode(1, 2), v);
    const auto rows = poincare_product_check(P_A, basis->spectrum(), {c, w});
    CHECK(rows[0].lhs < 1e-12);
    CHECK(rows[0].holds);
    CHECK(rows[1].holds);
    CHECK(rows[1].ratio < P_A + basis->spectrum().poincare_constant);
}

TEST_CASE("spectral field arithmetic and reality")
{
    const auto basis = square();
    const auto g = make_grid(1, 10, 32);
    SpectralField f(basis, g);
    VectorXcd v = VectorXcd::Constant(g->size(), cplx(1, 2));
    f.set(basis->mode(2, 1), v);
    CHECK(f.reality_defect() > 0);
    f.set(basis->mode(-2, 4), v.conjugate());
    CHECK(f.reality_defect() == 0);
    const auto h = f + f;
    CHECK(h.values(basis->mode(2, 1))(3) == cplx(2, 4));
    CHECK_THROWS(f.set({2, 1.0, 1}, v));
    CHECK_THROWS(f.set(basis->mode(1, 1), VectorXcd::Zero(3)));
}
