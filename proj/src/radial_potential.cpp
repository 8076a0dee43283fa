#include "alg/ansatz.hpp"

#include <cmath>
#include <stdexcept>

namespace alg {

RadialPotential radial_potential(const RadialSource& src, SignConvention convention,
                                 const RadialPotentialOptions& options)
{
    if (!(src.rho1 > 0)) throw std::invalid_argument("radial potential: rho1 must be positive");
    if (options.panels < 1024) throw std::invalid_argument("radial potential: need at least 1024 panels");
    const double lo = std::log(options.rho_lo_ratio * src.rho1), hi = std::log(src.rho1);
    const double step = (hi - lo) / options.panels;
    const int outer = static_cast<int>(std::ceil(std::log(options.rho_hi_ratio) / step));

    RadialPotential pot;
    pot.rho1 = src.rho1;
    const int n = options.panels + 1 + outer;
    pot.rho.resize(n);
    pot.h.assign(n, 0.0);
    for (int i = 0; i < n; ++i) pot.rho[i] = i == options.panels ? src.rho1 : std::exp(lo + step * i);

    auto f = [&](double x) { return src.f ? src.f(x) : 0.0; };
    const auto& rule = gauss_legendre(8);
    double i1 = 0, i2 = 0; // int_rho^rho1 x f, int_rho^rho1 x log x f
    for (int i = options.panels; i >= 0; --i) {
        const double rho = pot.rho[i];
        pot.h[i] = 4 * std::log(rho) * i1 - 4 * i2;
        if (i == 0) break;
        const auto q = map_rule(rule, pot.rho[i - 1], rho);
        for (int j = 0; j < q.nodes.size(); ++j) {
            const double x = q.nodes(j), g = q.weights(j) * x * f(x);
            i1 += g;
            i2 += g * std::log(x);
        }
    }
    if (convention == SignConvention::corrected)
        for (auto& v : pot.h) v = -v;
    return pot;
}

double radial_potential_residual(const RadialPotential& pot, const RadialSource& src, SignConvention convention)
{
    const int n = static_cast<int>(pot.rho.size());
    const int half = 4;
    const double sign = convention == SignConvention::corrected ? 1 : -1;
    double worst = 0, fmax = 0;
    for (int i = 0; i < n; ++i)
        if (pot.rho[i] <= pot.rho1 && src.f) fmax = std::max(fmax, std::abs(src.f(pot.rho[i])));
    for (int i = half; i < n - half; ++i) {
        const double a = pot.rho[i - half], b = pot.rho[i + half];
        if (a < pot.rho1 && b > pot.rho1) continue;
        const auto w = fornberg_weights<double>(pot.rho[i], std::span(pot.rho).subspan(i - half, 2 * half + 1), 2);
        double d1 = 0, d2 = 0;
        for (int j = 0; j <= 2 * half; ++j) {
            d1 += w(1, j) * pot.h[i - half + j];
            d2 += w(2, j) * pot.h[i - half + j];
        }
        const double rho = pot.rho[i];
        const double f = rho <= pot.rho1 && src.f ? src.f(rho) : 0.0;
        worst = std::max(worst, std::abs(d2 + d1 / rho - sign * 4 * f));
    }
    return fmax > 0 ? worst / fmax : worst;
}

} // namespace alg
