#include "alg/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alg {

namespace {

double factorial(int n)
{
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check(const ConstraintParams& p)
{
    if (!(p.K >= 1)) throw std::invalid_argument("constraint: K must be >= 1");
    if (p.d < 1) throw std::invalid_argument("constraint: d must be >= 1");
    if (p.ord_sigma < 2) throw std::invalid_argument("constraint: ord_sigma must be >= 2");
    if (!(p.vol_Y > 0)) throw std::invalid_argument("constraint: vol_Y must be positive");
    if (!(p.gamma_chi > 0)) throw std::invalid_argument("constraint: gamma_chi must be positive");
    if (!(p.beta > 0)) throw std::invalid_argument("constraint: beta must be positive");
    if (!(p.R0 > 0)) throw std::invalid_argument("constraint: R0 must be positive");
    if (!std::isfinite(p.err)) throw std::invalid_argument("constraint: err must be finite");
}

} // namespace

ConformalFactor oscillating_conformal_factor(double K)
{
    return [K](double rho) { return std::pow(K, 0.9 * std::sin(7 * std::log(rho))); };
}

double constraint_t0(const ConstraintParams& p)
{
    check(p);
    const double floor = 10 / p.R0;
    if (p.err == 0) return floor;
    const double num = 1000 * std::pow(32.0, 2 + 2 * p.beta) * std::pow(p.K, p.d) * p.ord_sigma * std::abs(p.err);
    const double den = 2 * pi * factorial(p.d) * p.vol_Y * p.gamma_chi;
    return std::max(floor, std::pow(num / den, 1 / (2 * p.beta)));
}

ConstraintResult constraint_solve(const ConstraintParams& p, const CutoffProfile& chi, const ConformalFactor& lambda,
                                  double t_factor)
{
    check(p);
    if (!(t_factor >= 1)) throw std::invalid_argument("constraint: t_factor must be >= 1");
    const auto gamma = cutoff_gamma(chi);
    if (std::abs(gamma.value - p.gamma_chi) > 1e-9 * p.gamma_chi)
        throw std::invalid_argument("constraint: gamma_chi does not match the cutoff profile");

    ConstraintResult res;
    res.t0 = constraint_t0(p);
    res.t = t_factor * res.t0;
    if (p.err == 0) return res;

    const double t = res.t;
    const double base = p.ord_sigma * std::abs(p.err) * t * t / (2 * pi * factorial(p.d) * p.vol_Y * p.gamma_chi);
    const double spread = std::pow(p.K, p.d - 1);
    const double sign = p.err > 0 ? 1 : -1;
    res.s0_interval = sign > 0 ? std::pair{base / spread, base * spread} : std::pair{-base * spread, -base / spread};
    res.s0_closed_form_model = sign * base;

    // d int eta ^ omega^{d-1} over the quotient, per unit s
    const auto lam = lambda ? lambda : [](double) { return 1.0; };
    const double moment =
        cutoff_moment(chi, [&](double y) { return std::pow(lam(y / t), p.d - 1); }) / (t * t);
    const double slope = 2 * pi * factorial(p.d) * p.vol_Y / p.ord_sigma * moment;
    auto residual = [&](double s) { return slope * s - p.err; };
    const double lo = res.s0_interval.first, hi = res.s0_interval.second;
    const double pad = 1e-3 * (hi - lo) + 1e-3 * std::abs(lo);
    res.s0 = brent_root(residual, lo - pad, hi + pad, 1e-16 * std::abs(base));
    res.eta_amplitude = std::abs(res.s0);
    return res;
}

HermitianEigenField constraint_eigenfield(const ConstraintParams& p, const CutoffProfile& chi,
                                          const ConformalFactor& lambda, double s, double t, int samples)
{
    check(p);
    if (samples < 2) throw std::invalid_argument("constraint eigenfield: need at least two samples");
    const auto lam = lambda ? lambda : [](double) { return 1.0; };
    const double a = chi.support_lo() / t, b = chi.support_hi() / t;
    HermitianEigenField out;
    out.d = p.d;
    out.eigenvalues.resize(samples, p.d);
    for (int i = 0; i < samples; ++i) {
        const double rho = a + (b - a) * i / (samples - 1);
        const double l = lam(rho);
        const double base = l - 1 + s * chi.value(rho * t) * std::pow(rho, 2 + 2 * p.beta);
        out.samples.push_back({rho, 0, {}});
        out.eigenvalues(i, 0) = base;
        for (int j = 1; j < p.d; ++j) out.eigenvalues(i, j) = l - 1;
        auto row = out.eigenvalues.row(i);
        std::sort(row.begin(), row.end());
    }
    return out;
}

} // namespace alg
