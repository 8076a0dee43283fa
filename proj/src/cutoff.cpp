#include "alg/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace alg {

std::array<double, 3> smooth_step(double x)
{
    if (x <= 0) return {0, 0, 0};
    if (x >= 1) return {1, 0, 0};
    auto p = [](double t) -> std::array<double, 3> {
        const double e = std::exp(-1 / t);
        const double t2 = t * t;
        return {e, e / t2, e * (1 / (t2 * t2) - 2 / (t2 * t))};
    };
    const auto a = p(x), b = p(1 - x);
    const double D = a[0] + b[0];
    const double D1 = a[1] - b[1];
    const double D2 = a[2] + b[2];
    const double N = a[0], N1 = a[1], N2 = a[2];
    const double s = N / D;
    const double s1 = (N1 * D - N * D1) / (D * D);
    const double s2 = ((N2 * D - N * D2) * D - 2 * D1 * (N1 * D - N * D1)) / (D * D * D);
    return {s, s1, s2};
}

CutoffProfile CutoffProfile::zero() { return {}; }

namespace {

void check_breakpoints(double a, double b, double c, double e)
{
    if (!(a >= 0 && a <= b && b <= c && c <= e))
        throw std::invalid_argument("cutoff: breakpoints must satisfy 0 <= a <= b <= c <= e");
}

} // namespace

CutoffProfile CutoffProfile::trapezoid(double a, double b, double c, double e)
{
    check_breakpoints(a, b, c, e);
    CutoffProfile p;
    p.kind_ = CutoffKind::trapezoid;
    p.bp_ = {a, b, c, e};
    return p;
}

CutoffProfile CutoffProfile::smooth(double a, double b, double c, double e)
{
    check_breakpoints(a, b, c, e);
    CutoffProfile p;
    p.kind_ = CutoffKind::smooth_mollified;
    p.bp_ = {a, b, c, e};
    return p;
}

CutoffProfile CutoffProfile::standard(CutoffKind kind)
{
    if (kind == CutoffKind::zero) return zero();
    return kind == CutoffKind::trapezoid ? trapezoid(1, 2, 3, 4) : smooth(1, 2, 3, 4);
}

std::array<double, 3> CutoffProfile::jet(double y) const
{
    const auto [a, b, c, e] = bp_;
    if (kind_ == CutoffKind::zero || y < a || y > e) return {0, 0, 0};
    if (y >= b && y <= c) return {1, 0, 0};
    if (y < b) {
        const double w = b - a;
        if (kind_ == CutoffKind::trapezoid) return {(y - a) / w, 1 / w, 0};
        const auto s = smooth_step((y - a) / w);
        return {s[0], s[1] / w, s[2] / (w * w)};
    }
    const double w = e - c;
    if (kind_ == CutoffKind::trapezoid) return {(e - y) / w, -1 / w, 0};
    const auto s = smooth_step((e - y) / w);
    return {s[0], -s[1] / w, s[2] / (w * w)};
}

std::vector<std::array<double, 2>> CutoffProfile::samples(int n) const
{
    double top = std::isfinite(bp_[3]) ? bp_[3] : bp_[1];
    top += 1;
    std::vector<std::array<double, 2>> out;
    for (int i = 0; i < n; ++i) {
        const double y = top * i / (n - 1);
        out.push_back({y, value(y)});
    }
    return out;
}

double cutoff_moment(const CutoffProfile& chi, const std::function<double(double)>& w, int pieces, int points)
{
    if (chi.kind() == CutoffKind::zero) return 0;
    const auto& bp = chi.breakpoints();
    if (!std::isfinite(bp[3])) throw std::invalid_argument("cutoff moment: support must be bounded");
    const auto& rule = gauss_legendre(points);
    double total = 0;
    for (int seg = 0; seg < 3; ++seg) {
        const double lo = bp[seg], hi = bp[seg + 1];
        if (!(hi > lo)) continue;
        const int np = seg == 1 ? 1 : pieces;
        for (int p = 0; p < np; ++p) {
            const auto q = map_rule(rule, lo + (hi - lo) * p / np, lo + (hi - lo) * (p + 1) / np);
            for (int j = 0; j < q.nodes.size(); ++j) {
                const double y = q.nodes(j);
                total += q.weights(j) * chi.value(y) * w(y) * y;
            }
        }
    }
    return total;
}

GammaEstimate cutoff_gamma(const CutoffProfile& chi)
{
    if (chi.kind() == CutoffKind::zero) return {0, 0};
    auto one = [](double) { return 1.0; };
    const double fine = cutoff_moment(chi, one, 16, 32);
    const double coarse = cutoff_moment(chi, one, 8, 16);
    return {fine, std::abs(fine - coarse)};
}

} // namespace alg
