#include "alg/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alg {

namespace {

int mode_slot(IddbarData& data, int ordinal)
{
    for (std::size_t j = 0; j < data.ordinals.size(); ++j)
        if (data.ordinals[j] == ordinal) return static_cast<int>(j);
    const int m = data.basis->complex_dimension();
    const long n = static_cast<long>(data.rho.size()) * data.n_theta;
    data.ordinals.push_back(ordinal);
    data.a.push_back(VectorXcd::Zero(n));
    data.f10.emplace_back(m, VectorXcd::Zero(n));
    data.f01.emplace_back(m, VectorXcd::Zero(n));
    data.w.emplace_back(m, std::vector<VectorXcd>(m, VectorXcd::Zero(n)));
    return static_cast<int>(data.ordinals.size()) - 1;
}

// theta derivatives of periodic samples by trigonometric interpolation
void theta_derivatives(const cplx* v, int n, cplx* d1, cplx* d2)
{
    std::vector<cplx> c(n);
    for (int m = 0; m < n; ++m) {
        cplx acc = 0;
        for (int t = 0; t < n; ++t) acc += v[t] * std::polar(1.0, -2 * pi * m * t / n);
        c[m] = acc / double(n);
    }
    for (int t = 0; t < n; ++t) {
        cplx a1 = 0, a2 = 0;
        for (int m = 0; m < n; ++m) {
            int k = m <= n / 2 ? m : m - n;
            if (n % 2 == 0 && m == n / 2) k = 0; // Nyquist term has no derivative
            const cplx e = c[m] * std::polar(1.0, 2 * pi * m * t / n);
            a1 += cplx(0, k) * e;
            a2 -= double(k) * k * e;
        }
        d1[t] = a1;
        d2[t] = a2;
    }
}

} // namespace

IddbarData iddbar_forward(std::shared_ptr<const FlatTorusBasis> basis, const std::vector<PotentialMode>& modes,
                          const std::function<double(double, double)>& f, double rho_lo, double rho_hi, int n_rho,
                          int n_theta)
{
    if (!basis || basis->dimension() % 2 != 0) throw std::invalid_argument("iddbar: need an even-dimensional torus");
    if (!(rho_lo > 0 && rho_hi > rho_lo) || n_rho < 5 || n_theta < 1)
        throw std::invalid_argument("iddbar: bad polar grid");
    IddbarData data;
    data.basis = basis;
    data.n_theta = n_theta;
    for (int i = 0; i < n_rho; ++i) data.rho.push_back(rho_lo + (rho_hi - rho_lo) * i / (n_rho - 1));
    const int m = basis->complex_dimension();
    mode_slot(data, 0);
    if (f) {
        const double root_v = std::sqrt(basis->volume());
        for (int i = 0; i < n_rho; ++i)
            for (int t = 0; t < n_theta; ++t)
                data.a[0](i * n_theta + t) += f(data.rho[i], 2 * pi * t / n_theta) * root_v;
    }
    for (const auto& pm : modes) {
        if (pm.ordinal < 0 || pm.ordinal >= basis->size()) throw std::invalid_argument("iddbar: bad ordinal");
        const int s = mode_slot(data, pm.ordinal);
        const VectorXcd zeta = basis->holomorphic_wavevector(pm.ordinal);
        for (int i = 0; i < n_rho; ++i) {
            const double rho = data.rho[i];
            const auto P = pm.radial(rho);
            for (int t = 0; t < n_theta; ++t) {
                const double th = 2 * pi * t / n_theta;
                const cplx E = pm.amplitude * std::polar(1.0, pm.k * th);
                const cplx phi = P[0] * E;
                const cplx du = 0.5 * std::polar(1.0, -th) * (P[1] + pm.k * P[0] / rho) * E;
                const cplx dub = 0.5 * std::polar(1.0, th) * (P[1] - pm.k * P[0] / rho) * E;
                const cplx lap = 0.25 * (P[2] + P[1] / rho - double(pm.k) * pm.k * P[0] / (rho * rho)) * E;
                const int q = i * n_theta + t;
                data.a[s](q) += lap;
                for (int a = 0; a < m; ++a) {
                    data.f10[s][a](q) += zeta(a) * dub;
                    data.f01[s][a](q) -= std::conj(zeta(a)) * du;
                    for (int b = 0; b < m; ++b) data.w[s][a][b](q) -= zeta(a) * std::conj(zeta(b)) * phi;
                }
            }
        }
    }
    return data;
}

IddbarReport iddbar_decompose_check(const IddbarData& data)
{
    if (!data.basis) throw std::invalid_argument("iddbar: missing basis");
    const int n_rho = static_cast<int>(data.rho.size());
    const int nt = data.n_theta;
    const int m = data.basis->complex_dimension();
    if (n_rho < 5) throw std::invalid_argument("iddbar: need at least five radii");
    const double h = data.rho[1] - data.rho[0];
    const double root_v = std::sqrt(data.basis->volume());

    IddbarReport rep;
    rep.f_base = VectorXd::Zero(static_cast<long>(n_rho) * nt);
    for (std::size_t s = 0; s < data.ordinals.size(); ++s) {
        const int ord = data.ordinals[s];
        if (ord == 0) {
            for (long q = 0; q < rep.f_base.size(); ++q) rep.f_base(q) = data.a[s](q).real() / root_v;
            // no gradient range on the constant fiber mode
            for (int a = 0; a < m; ++a) {
                rep.non_gradient = std::max(rep.non_gradient, data.f10[s][a].cwiseAbs().maxCoeff());
                rep.non_gradient = std::max(rep.non_gradient, data.f01[s][a].cwiseAbs().maxCoeff());
            }
            continue;
        }
        const VectorXcd zeta = data.basis->holomorphic_wavevector(ord);
        const double z2 = zeta.squaredNorm();
        for (long q = 0; q < rep.f_base.size(); ++q) {
            VectorXcd v10(m), v01(m);
            for (int a = 0; a < m; ++a) {
                v10(a) = data.f10[s][a](q);
                v01(a) = data.f01[s][a](q);
            }
            const VectorXcd p10 = v10 - zeta * (zeta.dot(v10) / z2);
            const VectorXcd zb = zeta.conjugate();
            const VectorXcd p01 = v01 - zb * (zb.dot(v01) / z2);
            rep.non_gradient = std::max({rep.non_gradient, p10.norm(), p01.norm()});
        }
        // fiberwise potential from the trace of the fiber block
        VectorXcd phi = VectorXcd::Zero(rep.f_base.size());
        for (int a = 0; a < m; ++a) phi -= data.w[s][a][a];
        phi /= z2;

        std::vector<cplx> dt(phi.size()), dtt(phi.size());
        for (int i = 0; i < n_rho; ++i)
            theta_derivatives(phi.data() + i * nt, nt, dt.data() + i * nt, dtt.data() + i * nt);

        for (int i = 2; i + 2 < n_rho; ++i) {
            const double rho = data.rho[i];
            for (int t = 0; t < nt; ++t) {
                const int q = i * nt + t;
                const cplx m2 = phi(q - 2 * nt), m1 = phi(q - nt), p1 = phi(q + nt), p2 = phi(q + 2 * nt);
                const cplx pr = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12 * h);
                const cplx prr = (-m2 + 16.0 * m1 - 30.0 * phi(q) + 16.0 * p1 - p2) / (12 * h * h);
                const double th = 2 * pi * t / nt;
                const cplx I(0, 1);
                const cplx du = 0.5 * std::polar(1.0, -th) * (pr - I * dt[q] / rho);
                const cplx dub = 0.5 * std::polar(1.0, th) * (pr + I * dt[q] / rho);
                const cplx lap = 0.25 * (prr + pr / rho + dtt[q] / (rho * rho));
                rep.residual_a = std::max(rep.residual_a, std::abs(data.a[s](q) - lap));
                for (int a = 0; a < m; ++a) {
                    rep.residual_f10 = std::max(rep.residual_f10, std::abs(data.f10[s][a](q) - zeta(a) * dub));
                    rep.residual_f10 =
                        std::max(rep.residual_f10, std::abs(data.f01[s][a](q) + std::conj(zeta(a)) * du));
                }
            }
        }
    }
    rep.residual_f10 = std::max(rep.residual_f10, rep.non_gradient);
    rep.obstruction = rep.non_gradient > 1e-8;
    return rep;
}

} // namespace alg
