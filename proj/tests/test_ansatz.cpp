#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alg/ansatz.hpp"

#include <cmath>
#include <random>

using namespace alg;

TEST_CASE("cutoff gamma")
{
    CHECK(cutoff_gamma(CutoffProfile::trapezoid(1, 2, 3, 4)).value == doctest::Approx(5).epsilon(1e-14));
    CHECK(cutoff_gamma(CutoffProfile::zero()).value == 0);
    CHECK(cutoff_gamma(CutoffProfile::trapezoid(2, 2, 3, 3)).value == doctest::Approx(2.5).epsilon(1e-14));
    // the smooth step is antisymmetric about 1/2, so ramps integrate like the trapezoid
    const auto g = cutoff_gamma(CutoffProfile::standard(CutoffKind::smooth_mollified));
    CHECK(g.value == doctest::Approx(5).epsilon(1e-12));
    CHECK(g.error < 1e-10);
}

TEST_CASE("cutoff invariants")
{
    for (const auto& c : {CutoffProfile::standard(CutoffKind::trapezoid), CutoffProfile::standard(CutoffKind::smooth_mollified),
                          CutoffProfile::smooth(5, 6, INFINITY, INFINITY)}) {
        for (const auto& s : c.samples(4001)) {
            CHECK(s[1] >= 0);
            CHECK(s[1] <= 1);
            if (s[0] >= c.plateau_lo() && s[0] <= c.plateau_hi()) CHECK(s[1] == 1);
            if (s[0] <= c.support_lo() || s[0] >= c.support_hi()) CHECK(s[1] == 0);
        }
    }
    CHECK_THROWS_AS(CutoffProfile::trapezoid(2, 1, 3, 4), std::invalid_argument);
    const auto s = smooth_step(0.5);
    CHECK(s[0] == 0.5);
    CHECK(smooth_step(0)[0] == 0);
    CHECK(smooth_step(1)[0] == 1);
}

TEST_CASE("radial potential of a constant source")
{
    const double rho1 = 2;
    const RadialSource src{rho1, [](double) { return 1.0; }};
    const auto pr = radial_potential(src, SignConvention::as_printed);
    const auto co = radial_potential(src, SignConvention::corrected);
    double err = 0;
    for (std::size_t i = 0; i < pr.rho.size(); ++i) {
        const double r = pr.rho[i];
        const double exact = r < rho1 ? 2 * rho1 * rho1 * std::log(r / rho1) + rho1 * rho1 - r * r : 0.0;
        err = std::max(err, std::abs(pr.h[i] - exact));
        CHECK(co.h[i] == -pr.h[i]);
        if (r > rho1) CHECK(pr.h[i] == 0);
    }
    CHECK(err < 1e-11);
    CHECK(radial_potential_residual(pr, src, SignConvention::as_printed) <= 1e-6);
    CHECK(radial_potential_residual(co, src, SignConvention::corrected) <= 1e-6);
    // wrong sign leaves the full source as residual
    CHECK(radial_potential_residual(pr, src, SignConvention::corrected) == doctest::Approx(8).epsilon(1e-5));
}

TEST_CASE("radial potential of a bump and of zero")
{
    const RadialSource bump{1.5, [](double r) { return r < 1.5 ? std::pow(1 - r * r / 2.25, 3) : 0.0; }};
    const auto co = radial_potential(bump, SignConvention::corrected);
    CHECK(radial_potential_residual(co, bump, SignConvention::corrected) <= 1e-6);
    const RadialSource zero{1, [](double) { return 0.0; }};
    for (double h : radial_potential(zero, SignConvention::as_printed).h) CHECK(h == 0);
    CHECK_THROWS_AS(radial_potential(zero, SignConvention::corrected, {512}), std::invalid_argument);
}

TEST_CASE("constraint example")
{
    ConstraintParams p{10, 3, 2, 1, 5, 1, 1, 100};
    const auto chi = CutoffProfile::standard(CutoffKind::trapezoid);
    const double t0 = std::sqrt(1000 * std::pow(32.0, 4) * 1000 * 2 / (2 * pi * 6 * 5));
    CHECK(constraint_t0(p) == doctest::Approx(t0).epsilon(1e-14));
    CHECK(t0 == doctest::Approx(105478.60876579897).epsilon(1e-15));
    const auto lam = oscillating_conformal_factor(p.K);
    const auto r = constraint_solve(p, chi, lam);
    CHECK(r.t == 2 * r.t0);
    CHECK(r.s0 > r.s0_interval.first);
    CHECK(r.s0 < r.s0_interval.second);
    const auto f = constraint_eigenfield(p, chi, lam, r.s0, r.t);
    CHECK(positivity_check(f).min_eigenvalue > 0);
}

TEST_CASE("constraint with the exact model metric")
{
    const auto chi = CutoffProfile::standard(CutoffKind::trapezoid);
    for (double err : {1.0, -3.5, 0.01}) {
        ConstraintParams p{1, 3, 2, 1, 5, err, 1, 100};
        const auto r = constraint_solve(p, chi);
        const double closed = p.ord_sigma * err * r.t * r.t / (2 * pi * 6 * 1 * 5);
        CHECK(std::abs(r.s0 - closed) <= 1e-10 * std::abs(closed));
        CHECK(r.s0_interval.first == doctest::Approx(r.s0_interval.second).epsilon(1e-15));
        CHECK(std::signbit(r.s0) == std::signbit(err));
    }
}

TEST_CASE("constraint with zero error and bad input")
{
    const auto chi = CutoffProfile::standard(CutoffKind::trapezoid);
    ConstraintParams p{3, 3, 2, 1, 5, 0, 1, 100};
    const auto r = constraint_solve(p, chi, oscillating_conformal_factor(3));
    CHECK(r.s0 == 0);
    CHECK(r.t0 == doctest::Approx(0.1));
    CHECK(r.eta_amplitude == 0);
    p.beta = 0;
    CHECK_THROWS_AS(constraint_solve(p, chi), std::invalid_argument);
    p.beta = 1;
    p.gamma_chi = 4;
    CHECK_THROWS_AS(constraint_solve(p, chi), std::invalid_argument);
}

TEST_CASE("constraint random draws stay in the interval")
{
    std::mt19937_64 rng(11);
    auto u = [&](double a, double b) { return a + (b - a) * double(rng() >> 11) * 0x1p-53; };
    const auto chi = CutoffProfile::standard(CutoffKind::smooth_mollified);
    const double gamma = cutoff_gamma(chi).value;
    for (int k = 0; k < 50; ++k) {
        ConstraintParams p{u(1.5, 10), 2 + int(rng() % 3), 2 + int(rng() % 5), u(0.5, 4), gamma,
                           u(-5, 5), u(0.3, 2), u(10, 1000)};
        const auto lam = oscillating_conformal_factor(p.K);
        const auto r = constraint_solve(p, chi, lam);
        const double lo = std::min(r.s0_interval.first, r.s0_interval.second);
        const double hi = std::max(r.s0_interval.first, r.s0_interval.second);
        CHECK(r.s0 > lo);
        CHECK(r.s0 < hi);
        CHECK(positivity_check(constraint_eigenfield(p, chi, lam, r.s0, r.t, 401)).min_eigenvalue > 0);
    }
}

TEST_CASE("gluing")
{
    const double R = 10;
    const auto chi = CutoffProfile::smooth(R, R + 1, INFINITY, INFINITY);
    const auto varphi = CutoffProfile::smooth(R - 2, R - 1, INFINITY, INFINITY);
    const GlueSamples few{4, 3};

    const auto zero = gluing_fixture(3, R, 0, 0, 121);
    for (double t : {0.0, 5.0}) {
        const auto rep = glue_ansatz(zero, chi, varphi, t, few);
        CHECK(rep.glued_min.min_eigenvalue == doctest::Approx(1));
        CHECK(rep.c1 == 0);
    }

    const auto big = gluing_fixture(3, R, 0, 50, 121);
    const auto bad = glue_ansatz(big, chi, varphi, 0, few);
    CHECK(bad.glued_min.min_eigenvalue < 0);
    const auto good = glue_ansatz(big, chi, varphi, -1, few);
    CHECK(good.t == good.t_min);
    CHECK(good.t_min == doctest::Approx(1000 * (good.c2 + good.c3 + 1)));
    CHECK(good.c3 == doctest::Approx(good.c1 * good.c1 / 2));
    CHECK(good.glued_min.min_eigenvalue > 0);
    CHECK(good.glued_min.min_eigenvalue >= good.reference_min.min_eigenvalue / 3);
    CHECK(good.relative_min >= 1.0 / 3);

    CHECK_THROWS_AS(glue_ansatz(big, varphi, chi, 0, few), std::invalid_argument);
}

namespace {

std::array<double, 3> radial_profile(double r)
{
    // P = r^2 e^{-r/2}
    const double e = std::exp(-r / 2);
    return {r * r * e, (2 * r - r * r / 2) * e, (2 - 2 * r + r * r / 4) * e};
}

std::shared_ptr<const FlatTorusBasis> torus4()
{
    return std::make_shared<const FlatTorusBasis>(std::vector<double>{1, 1, 1, 1}, 4 * pi * pi * 2.5);
}

IddbarData forward(int n_rho)
{
    const auto basis = torus4();
    std::vector<PotentialMode> modes{{basis->ordinal_of({1, 0, 0, 0}), 1, {0.5, 0.2}, radial_profile},
                                     {basis->ordinal_of({0, 1, 1, 0}), -2, 1.0, radial_profile},
                                     {basis->ordinal_of({0, 0, 0, 0}), 0, 0.7, radial_profile}};
    return iddbar_forward(basis, modes, [](double r, double th) { return std::cos(th) / r; }, 1, 3, n_rho, 16);
}

int slot(const IddbarData& d, int ordinal)
{
    for (std::size_t s = 0; s < d.ordinals.size(); ++s)
        if (d.ordinals[s] == ordinal) return int(s);
    return -1;
}

} // namespace

TEST_CASE("iddbar check on zero data")
{
    const auto d = iddbar_forward(torus4(), {}, [](double, double) { return 0.0; }, 1, 2, 9, 8);
    const auto rep = iddbar_decompose_check(d);
    CHECK(rep.residual_f10 == 0);
    CHECK(rep.residual_a == 0);
    CHECK(rep.f_base.cwiseAbs().maxCoeff() == 0);
    CHECK_FALSE(rep.obstruction);
}

TEST_CASE("iddbar check on forward-constructed data converges")
{
    double prev = 0;
    for (int n : {26, 51, 101, 201}) {
        const auto rep = iddbar_decompose_check(forward(n));
        const double res = std::max(rep.residual_f10, rep.residual_a);
        CHECK_FALSE(rep.obstruction);
        if (prev > 0) CHECK(prev / res >= 3.5);
        prev = res;
    }
    CHECK(prev <= 1e-8);
}

TEST_CASE("iddbar extracts the base function")
{
    const auto d = forward(26);
    const auto rep = iddbar_decompose_check(d);
    double err = 0;
    for (std::size_t i = 0; i < d.rho.size(); ++i)
        for (int t = 0; t < d.n_theta; ++t) {
            // a_0 / sqrt(V) = f + d^2 phi_0 / du dubar for the constant fiber mode
            const double r = d.rho[i], th = 2 * pi * t / d.n_theta;
            const auto p = radial_profile(r);
            const double lap = 0.7 * 0.25 * (p[2] + p[1] / r);
            err = std::max(err, std::abs(rep.f_base(i * d.n_theta + t) - std::cos(th) / r - lap));
        }
    CHECK(err < 1e-12);
}

TEST_CASE("iddbar injected components are reported as obstructions")
{
    auto d = forward(51);
    const int s0 = slot(d, 0);
    REQUIRE(s0 >= 0);
    d.f10[s0][0].array() += 1.0;
    auto rep = iddbar_decompose_check(d);
    CHECK(rep.residual_f10 >= 0.9);
    CHECK(rep.obstruction);

    d = forward(51);
    const int s1 = slot(d, d.basis->ordinal_of({1, 0, 0, 0}));
    REQUIRE(s1 >= 0);
    const VectorXcd zeta = d.basis->holomorphic_wavevector(d.ordinals[s1]);
    // unit vector orthogonal to zeta in C^2
    const cplx e0 = -std::conj(zeta(1)) / zeta.norm(), e1 = std::conj(zeta(0)) / zeta.norm();
    d.f10[s1][0].array() += e0;
    d.f10[s1][1].array() += e1;
    rep = iddbar_decompose_check(d);
    CHECK(rep.non_gradient == doctest::Approx(1).epsilon(1e-12));
    CHECK(rep.residual_f10 >= 0.9);
    CHECK(rep.obstruction);
}

TEST_CASE("sigma average")
{
    SigmaSamples c{3, 12, 1, VectorXcd(36)};
    for (int i = 0; i < 3; ++i)
        for (int t = 0; t < 12; ++t) c.values(i * 12 + t) = (i + 1) * std::cos(2 * pi * t / 12);
    const auto z = sigma_average(c, 2, {0});
    CHECK(z.values.cwiseAbs().maxCoeff() < 1e-15);
    for (int t = 0; t < 12; t += 6) CHECK(z.values(t) == 0.0);

    SigmaSamples inv{2, 6, 1, VectorXcd(12)};
    for (int q = 0; q < 12; ++q) inv.values(q) = std::cos(2 * pi * 3 * (q % 6) / 6.0) + 0.3 * (q / 6);
    CHECK(sigma_average(inv, 3, {0}).values == inv.values);

    std::mt19937_64 rng(5);
    SigmaSamples r{4, 12, 4, VectorXcd(192)};
    for (auto& v : r.values) v = {double(rng() >> 11) * 0x1p-53, double(rng() >> 11) * 0x1p-53};
    const std::vector<int> perm{1, 0, 3, 2};
    const auto a = sigma_average(r, 2, perm);
    for (int i = 0; i < 4; ++i)
        for (int t = 0; t < 12; ++t)
            for (int j = 0; j < 4; ++j)
                CHECK(a.values((i * 12 + t) * 4 + j) == a.values((i * 12 + (t + 6) % 12) * 4 + perm[j]));
    CHECK(sigma_average(a, 2, perm).values == a.values);
    SigmaSamples scaled = r;
    scaled.values *= 4.0;
    CHECK(sigma_average(scaled, 2, perm).values == a.values * 4.0);

    const std::vector<int> cyc{1, 2, 3, 0};
    const auto b = sigma_average(r, 4, cyc);
    CHECK(sigma_average(b, 4, cyc).values == b.values);

    CHECK_THROWS_AS(sigma_average(r, 1, perm), std::invalid_argument);
    CHECK_THROWS_AS(sigma_average(r, 5, {0, 1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(sigma_average(r, 3, cyc), std::invalid_argument);
    CHECK_THROWS_AS(sigma_average(r, 2, {0, 1}), std::invalid_argument);
    SigmaSamples wrong = r;
    wrong.n_fiber = 3;
    CHECK_THROWS_AS(sigma_average(wrong, 2, {0, 1, 2}), std::invalid_argument);
}
