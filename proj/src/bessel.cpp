#include "alg/bessel.hpp"

#include "alg/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace alg {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;

void check_argument(int k, double x)
{
    if (!(x > 0) || !std::isfinite(x)) throw std::domain_error("modified Bessel: argument must be positive and finite");
    if (k < 0 || k > max_bessel_order) throw std::domain_error("modified Bessel: order out of supported range");
}

// exp(x) K_0(x), exp(x) K_1(x)
std::pair<double, double> scaled_k01(double x)
{
    if (x <= 2) {
        const double q = 0.25 * x * x;
        const double lg = std::log(0.5 * x);
        double i0 = 0, i1 = 0, s0 = 0, s1 = 0;
        double t0 = 1;          // q^j / (j!)^2
        double t1 = 0.5 * x;    // (x/2) q^j / (j! (j+1)!)
        double harmonic = 0;    // H_j
        for (int j = 0; j < 60; ++j) {
            if (j > 0) {
                harmonic += 1.0 / j;
                t0 *= q / (double(j) * j);
                t1 *= q / (double(j) * (j + 1));
            }
            i0 += t0;
            i1 += t1;
            s0 += harmonic * t0;
            // psi(j+1) + psi(j+2) = -2 gamma + 2 H_j + 1/(j+1)
            s1 += (-2 * euler_gamma + 2 * harmonic + 1.0 / (j + 1)) * t1;
            if (t0 < 1e-18 * i0 && j > 2) break;
        }
        const double k0 = -(lg + euler_gamma) * i0 + s0;
        const double k1 = 1 / x + lg * i1 - 0.5 * s1;
        const double ex = std::exp(x);
        return {k0 * ex, k1 * ex};
    }
    // Steed's method on the second continued fraction, order 0.
    double b = 2 * (1 + x);
    double d = 1 / b;
    double h = d, delh = d;
    double q1 = 0, q2 = 1;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2;
        d = 1 / (b + a * d);
        delh = (b * d - 1) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < 1e-17) break;
    }
    h = a1 * h;
    const double k0 = std::sqrt(pi / (2 * x)) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

double series_threshold(int k) { return 30.0 + 0.5 * k * k; }

double scaled_i_series(int k, double x)
{
    const double q = 0.25 * x * x;
    double term = std::exp(k * std::log(0.5 * x) - std::lgamma(k + 1.0) - x);
    double sum = term;
    for (int j = 0; j < 4000; ++j) {
        term *= q / ((j + 1.0) * (j + k + 1.0));
        sum += term;
        if (term < 1e-18 * sum && j > x) break;
    }
    return sum;
}

double scaled_i_asymptotic(int k, double x)
{
    const double mu = 4.0 * k * k;
    double term = 1, sum = 1, prev = 2;
    for (int j = 1; j < 200; ++j) {
        const double odd = 2.0 * j - 1;
        term *= -(mu - odd * odd) / (j * 8.0 * x);
        if (std::abs(term) > prev) break;
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2 * pi * x);
}

} // namespace

double scaled_bessel_k(int k, double x)
{
    check_argument(k, x);
    auto [km, kc] = scaled_k01(x);
    if (k == 0) return km;
    for (int n = 1; n < k; ++n) {
        const double kn = km + (2.0 * n / x) * kc;
        km = kc;
        kc = kn;
    }
    return kc;
}

double scaled_bessel_i(int k, double x)
{
    check_argument(k, x);
    return x <= series_threshold(k) ? scaled_i_series(k, x) : scaled_i_asymptotic(k, x);
}

ScaledBesselPair scaled_bessel_pair(int k, double x)
{
    check_argument(k, x);
    ScaledBesselPair p{};
    p.i = scaled_bessel_i(k, x);
    p.k = scaled_bessel_k(k, x);
    if (k == 0) {
        p.di = scaled_bessel_i(1, x);
        p.dk = -scaled_bessel_k(1, x);
    } else {
        p.di = scaled_bessel_i(k - 1, x) - (k / x) * p.i;
        p.dk = -scaled_bessel_k(k - 1, x) - (k / x) * p.k;
    }
    return p;
}

double bessel_wronskian_defect(int k, double x)
{
    const auto p = scaled_bessel_pair(k, x);
    return x * (p.i * p.dk - p.di * p.k);
}

} // namespace alg
