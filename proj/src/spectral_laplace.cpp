#include "alg/spectral_laplace.hpp"

#include "alg/bessel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace alg {

namespace {

// Homogeneous pair y_in = in(r) e^{g(r)}, y_out = out(r) e^{-g(r)} with r (y_in y_out' - y_in' y_out) = pw.
struct HomogeneousPair
{
    enum class Kind { bessel, power, zero_bounded, zero_newtonian } kind;
    int k = 0;
    double kappa = 0;

    double g(double r) const
    {
        switch (kind) {
        case Kind::bessel: return kappa * r;
        case Kind::power: return k * std::log(r);
        default: return 0;
        }
    }
    double g_inverse(double v) const { return kind == Kind::bessel ? v / kappa : std::exp(v / k); }
    bool graded() const { return kind == Kind::bessel || kind == Kind::power; }
    double in(double r) const
    {
        switch (kind) {
        case Kind::bessel: return scaled_bessel_i(k, kappa * r);
        case Kind::zero_bounded: return std::log(r);
        default: return 1;
        }
    }
    double out(double r) const
    {
        switch (kind) {
        case Kind::bessel: return scaled_bessel_k(k, kappa * r);
        case Kind::zero_newtonian: return std::log(r);
        default: return 1;
        }
    }
    double pw() const
    {
        switch (kind) {
        case Kind::bessel: return -1;
        case Kind::power: return -2.0 * k;
        case Kind::zero_bounded: return -1;
        default: return 1;
        }
    }
};

HomogeneousPair pair_for(const ModeIndex& mode, ZeroModeBranch branch)
{
    if (mode.mu < 0) throw std::invalid_argument("mode: negative fiber eigenvalue");
    HomogeneousPair p{HomogeneousPair::Kind::zero_bounded, std::abs(mode.k), 0};
    if (mode.mu > 0) {
        p.kind = HomogeneousPair::Kind::bessel;
        p.kappa = std::sqrt(mode.mu);
        if (p.k > max_bessel_order) throw std::invalid_argument("mode: circle frequency beyond supported Bessel order");
    } else if (mode.k != 0) {
        p.kind = HomogeneousPair::Kind::power;
    } else if (branch == ZeroModeBranch::newtonian) {
        p.kind = HomogeneousPair::Kind::zero_newtonian;
    }
    return p;
}

// Sub-intervals of a panel, graded geometrically away from the end where the
// exponential weight peaks. Each entry is an s-interval.
std::vector<std::pair<double, double>> graded_pieces(const HomogeneousPair& p, double lo, double hi, bool peak_right)
{
    std::vector<std::pair<double, double>> out;
    if (!p.graded()) {
        out.emplace_back(lo, hi);
        return out;
    }
    const double g_lo = p.g(lo), g_hi = p.g(hi);
    const double span = g_hi - g_lo;
    if (span <= 2) {
        out.emplace_back(lo, hi);
        return out;
    }
    double d0 = 0, step = 2;
    while (d0 < span && d0 < 80) {
        const double d1 = std::min(d0 + step, span);
        double a, b;
        if (peak_right) {
            b = d0 == 0 ? hi : p.g_inverse(g_hi - d0);
            a = d1 == span ? lo : p.g_inverse(g_hi - d1);
        } else {
            a = d0 == 0 ? lo : p.g_inverse(g_lo + d0);
            b = d1 == span ? hi : p.g_inverse(g_lo + d1);
        }
        out.emplace_back(a, b);
        d0 = d1;
        step *= 2;
    }
    return out;
}

double max_abs(const VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

RadialProfile mode_operator_apply(const RadialProfile& profile)
{
    const auto& grid = *profile.grid;
    if (grid.size() < 4) throw std::invalid_argument("mode operator: grid too coarse");
    const VectorXcd d1 = grid.derivative(profile.values, 1);
    const VectorXcd d2 = grid.derivative(profile.values, 2);
    VectorXcd out(grid.size());
    const double k2 = double(profile.mode.k) * profile.mode.k;
    for (int i = 0; i < grid.size(); ++i) {
        const double r = grid.node(i);
        out(i) = d2(i) + d1(i) / r - (k2 / (r * r) + profile.mode.mu) * profile.values(i);
    }
    return {profile.mode, profile.grid, out};
}

double interior_residual(const RadialProfile& u, const VectorXcd& rhs)
{
    const auto lu = mode_operator_apply(u);
    const auto& grid = *u.grid;
    double worst = 0;
    for (int i = grid.interior_begin(); i < grid.interior_end(); ++i)
        worst = std::max(worst, std::abs(lu.values(i) - rhs(i)));
    const double scale = max_abs(rhs);
    return scale > 0 ? worst / scale : worst;
}

GreenSolution mode_greens_solve(const ModeIndex& mode, const RadialProfile& rhs, cplx boundary,
                                const GreenOptions& options)
{
    const auto& grid = *rhs.grid;
    const int n = grid.size();
    const auto pair = pair_for(mode, options.zero_mode);
    const auto& rule = gauss_legendre(options.quadrature_points);

    std::vector<double> g(n), in(n), out(n);
    for (int i = 0; i < n; ++i) {
        const double r = grid.node(i);
        g[i] = pair.g(r);
        in[i] = pair.in(r);
        out[i] = pair.out(r);
        if (pair.kind == HomogeneousPair::Kind::bessel) {
            const double defect = bessel_wronskian_defect(pair.k, pair.kappa * r);
            if (std::abs(defect + 1) > 1e-10)
                throw std::runtime_error("Bessel pair fails the Wronskian check at r = " + std::to_string(r));
        }
    }

    VectorXcd A = VectorXcd::Zero(n), B = VectorXcd::Zero(n);
    cplx mass = 0;
    double abs_mass = 0;
    std::vector<VectorXd> forward(n - 1), backward(n - 1);
    std::vector<int> start(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        const double lo = grid.node(i), hi = grid.node(i + 1);
        start[i] = std::clamp(i - 3, 0, n - 8);
        std::span<const double> x(grid.nodes().data() + start[i], 8);
        VectorXd wf = VectorXd::Zero(8), wb = VectorXd::Zero(8);
        for (const auto& [a, b] : graded_pieces(pair, lo, hi, true)) {
            const auto q = map_rule(rule, a, b);
            for (int j = 0; j < q.nodes.size(); ++j) {
                const double s = q.nodes(j);
                wf += (q.weights(j) * std::exp(-(g[i + 1] - pair.g(s))) * pair.in(s) * s) *
                      lagrange_weights<double>(s, x);
            }
        }
        for (const auto& [a, b] : graded_pieces(pair, lo, hi, false)) {
            const auto q = map_rule(rule, a, b);
            for (int j = 0; j < q.nodes.size(); ++j) {
                const double s = q.nodes(j);
                wb += (q.weights(j) * std::exp(-(pair.g(s) - g[i])) * pair.out(s) * s) *
                      lagrange_weights<double>(s, x);
            }
        }
        forward[i] = std::move(wf);
        backward[i] = std::move(wb);
    }
    for (int i = 0; i + 1 < n; ++i) {
        cplx jf = 0;
        for (int j = 0; j < 8; ++j) jf += forward[i](j) * rhs.values(start[i] + j);
        A(i + 1) = std::exp(-(g[i + 1] - g[i])) * A(i) + jf;
    }
    for (int i = n - 2; i >= 0; --i) {
        cplx jb = 0;
        for (int j = 0; j < 8; ++j) jb += backward[i](j) * rhs.values(start[i] + j);
        B(i) = std::exp(-(g[i + 1] - g[i])) * B(i + 1) + jb;
    }

    if (pair.kind == HomogeneousPair::Kind::zero_newtonian && options.require_bounded) {
        // In this branch in = 1 and g = 0, so A(r_max) is the total mass.
        mass = A(n - 1);
        for (int i = 0; i + 1 < n; ++i)
            for (int j = 0; j < 8; ++j) abs_mass += std::abs(forward[i](j) * rhs.values(start[i] + j));
        if (std::abs(mass) > 1e-12 * std::max(abs_mass, std::numeric_limits<double>::min()))
            throw LogGrowthObstruction(std::abs(mass));
    }

    VectorXcd u(n);
    const double pw = pair.pw();
    for (int i = 0; i < n; ++i) u(i) = (out[i] * A(i) + in[i] * B(i)) / pw;
    const cplx shift = boundary - u(0);
    if (shift != 0.0) {
        for (int i = 0; i < n; ++i) {
            const double h = pair.kind == HomogeneousPair::Kind::zero_newtonian
                                 ? 1.0
                                 : out[i] / out[0] * std::exp(-(g[i] - g[0]));
            u(i) += shift * h;
        }
    }
    GreenSolution sol{RadialProfile(mode, rhs.grid, std::move(u)), 0};
    sol.residual = interior_residual(sol.u, rhs.values);
    return sol;
}

RadialProfile harmonic_mode(const ModeIndex& mode, cplx boundary, const GridPtr& grid)
{
    const int n = grid->size();
    VectorXcd u(n);
    if (mode.k == 0 && mode.mu == 0) {
        u.setConstant(boundary);
        return {mode, grid, u};
    }
    const auto pair = pair_for(mode, ZeroModeBranch::bounded);
    const double r0 = grid->r_min();
    const double out0 = pair.out(r0), g0 = pair.g(r0);
    for (int i = 0; i < n; ++i) {
        const double r = grid->node(i);
        u(i) = boundary * (pair.out(r) / out0 * std::exp(-(pair.g(r) - g0)));
    }
    return {mode, grid, u};
}

SpectralField solve_full(const SpectralField& rhs, const BoundarySlice& boundary, const GreenOptions& options,
                         unsigned threads)
{
    std::vector<ModeIndex> modes;
    for (const auto& [m, v] : rhs.modes()) modes.push_back(m);
    for (const auto& [m, b] : boundary)
        if (!rhs.has(m) && b != 0.0) modes.push_back(m);
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

    std::vector<VectorXcd> solved(modes.size());
    std::vector<std::optional<ModeError>> failures(modes.size());
    parallel_for(modes.size(), threads, [&](std::size_t idx) {
        const auto& m = modes[idx];
        try {
            if (!is_valid_mode(rhs.spectrum(), m)) throw std::invalid_argument("mode not valid for the spectrum");
            const auto it = boundary.find(m);
            const cplx b = it == boundary.end() ? cplx(0) : it->second;
            if (rhs.has(m)) {
                solved[idx] = mode_greens_solve(m, rhs.profile(m), b, options).u.values;
            } else {
                solved[idx] = harmonic_mode(m, b, rhs.grid()).values;
            }
        } catch (const std::exception& e) {
            failures[idx].emplace(m, e.what());
        }
    });
    for (const auto& f : failures)
        if (f) throw *f;
    SpectralField out(rhs.spectrum_ptr(), rhs.grid());
    if (rhs.basis()) out = SpectralField(rhs.basis(), rhs.grid());
    for (std::size_t i = 0; i < modes.size(); ++i) out.set(modes[i], std::move(solved[i]));
    return out;
}

double annulus_norm(const SpectralField& field, double R1, double R2, double weight)
{
    const RadialQuadrature quad(*field.grid(), R1, R2);
    double total = 0;
    for (const auto& [m, v] : field.modes()) {
        double s = 0;
        for (int q = 0; q < quad.size(); ++q) {
            const double r = quad.point(q);
            s += quad.weight(q) * std::norm(quad.sample(v, q)) * std::pow(r, 2 * weight) * r;
        }
        total += 2 * pi * s;
    }
    return std::sqrt(total);
}

double sector_norm(const SpectralField& field, double R, double half_width, double theta0)
{
    if (!(half_width > 0) || half_width > pi) throw std::invalid_argument("sector norm: half_width must lie in (0, pi]");
    const RadialQuadrature quad(*field.grid(), R - 1, R + 1);
    const int kmax = field.max_abs_k();
    const int pieces = std::max(1, static_cast<int>(std::ceil(2 * half_width * (2 * kmax + 1) / pi)));
    const auto& rule = gauss_legendre(20);
    std::vector<double> theta, wtheta;
    for (int p = 0; p < pieces; ++p) {
        const double a = theta0 - half_width + 2 * half_width * p / pieces;
        const double b = theta0 - half_width + 2 * half_width * (p + 1) / pieces;
        const auto q = map_rule(rule, a, b);
        for (int j = 0; j < q.nodes.size(); ++j) theta.push_back(q.nodes(j)), wtheta.push_back(q.weights(j));
    }
    // Modes are ordered by fiber ordinal first, so each ordinal is a contiguous run.
    std::vector<std::pair<ModeIndex, VectorXcd>> sampled;
    for (const auto& [m, v] : field.modes()) {
        VectorXcd s(quad.size());
        for (int q = 0; q < quad.size(); ++q) s(q) = quad.sample(v, q);
        sampled.emplace_back(m, std::move(s));
    }
    double total = 0;
    std::size_t begin = 0;
    while (begin < sampled.size()) {
        std::size_t end = begin;
        while (end < sampled.size() && sampled[end].first.mu_ordinal == sampled[begin].first.mu_ordinal) ++end;
        double group = 0;
        for (std::size_t t = 0; t < theta.size(); ++t) {
            double radial = 0;
            for (int q = 0; q < quad.size(); ++q) {
                cplx s = 0;
                for (std::size_t i = begin; i < end; ++i)
                    s += sampled[i].second(q) * std::polar(1.0, sampled[i].first.k * theta[t]);
                radial += quad.weight(q) * std::norm(s) * quad.point(q);
            }
            group += wtheta[t] * radial;
        }
        total += group;
        begin = end;
    }
    return std::sqrt(total);
}

double weighted_holder_seminorm(const SpectralField& field, double weight, int order)
{
    if (order < 0 || order > 4) throw std::invalid_argument("holder seminorm: order must lie in [0, 4]");
    const auto& grid = *field.grid();
    if (grid.r_min() + 2 > grid.r_max()) throw std::invalid_argument("holder seminorm: grid shorter than one annulus");
    if (field.empty()) return 0;

    struct Entry
    {
        ModeIndex mode;
        std::vector<VectorXcd> derivs;
    };
    std::vector<Entry> entries;
    for (const auto& [m, v] : field.modes()) {
        Entry e{m, {v}};
        if (order >= 1) e.derivs.push_back(grid.derivative(v, 1));
        if (order >= 2) e.derivs.push_back(grid.derivative(v, 2));
        if (order >= 3) e.derivs.push_back(grid.derivative(e.derivs[2], 1));
        if (order >= 4) e.derivs.push_back(grid.derivative(e.derivs[2], 2));
        entries.push_back(std::move(e));
    }
    const int kmax = field.max_abs_k();
    const int ntheta = std::max(16, 8 * (2 * kmax + 1));

    auto pointwise = [&](double r) {
        const auto st = grid.interpolation(r);
        std::vector<std::vector<cplx>> at(entries.size());
        for (std::size_t e = 0; e < entries.size(); ++e)
            for (const auto& d : entries[e].derivs) {
                cplx acc = 0;
                for (int j = 0; j < st.weights.size(); ++j) acc += st.weights(j) * d(st.start + j);
                at[e].push_back(acc);
            }
        double best = 0;
        for (int a = 0; a <= order; ++a)
            for (int b = 0; a + b <= order; ++b)
                for (int t = 0; t < ntheta; ++t) {
                    const double theta = 2 * pi * t / ntheta;
                    double sq = 0;
                    std::size_t begin = 0;
                    while (begin < entries.size()) {
                        std::size_t end = begin;
                        cplx s = 0;
                        while (end < entries.size() &&
                               entries[end].mode.mu_ordinal == entries[begin].mode.mu_ordinal) {
                            const int k = entries[end].mode.k;
                            s += at[end][a] * std::pow(cplx(0, k), b) * std::polar(1.0, k * theta);
                            ++end;
                        }
                        sq += std::norm(s);
                        begin = end;
                    }
                    best = std::max(best, std::sqrt(sq));
                }
        return best;
    };

    std::vector<double> at_node(grid.size());
    for (int i = 0; i < grid.size(); ++i) at_node[i] = pointwise(grid.node(i));
    double sup = 0;
    for (int l = 0; l < grid.size() && grid.node(l) + 2 <= grid.r_max(); ++l) {
        const double r0 = grid.node(l);
        double s = pointwise(r0 + 2);
        for (int j = l; j < grid.size() && grid.node(j) <= r0 + 2; ++j) s = std::max(s, at_node[j]);
        sup = std::max(sup, std::pow(r0, weight) * s);
    }
    return sup;
}

double neumann_poincare_annulus(double R1, double R2, int fourier_cutoff, const PoincareOptions& options)
{
    if (!(R1 >= 1) || !(R2 > R1)) throw std::invalid_argument("neumann poincare: need R2 > R1 >= 1");
    if (fourier_cutoff < 1) throw std::invalid_argument("neumann poincare: fourier cutoff must be at least 1");
    const int ne = options.elements;
    const int nn = ne + 1;
    const double h = (R2 - R1) / ne;
    const auto& rule = gauss_legendre(4);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= fourier_cutoff; ++k) {
        VectorXd diag = VectorXd::Zero(nn), off = VectorXd::Zero(nn - 1), mass = VectorXd::Zero(nn);
        for (int e = 0; e < ne; ++e) {
            const double a = R1 + e * h;
            const auto q = map_rule(rule, a, a + h);
            for (int j = 0; j < q.nodes.size(); ++j) {
                const double r = q.nodes(j), w = q.weights(j);
                const double p1 = (r - a) / h, p0 = 1 - p1;
                const double k2r = double(k) * k / r;
                diag(e) += w * (r / (h * h) + k2r * p0 * p0);
                diag(e + 1) += w * (r / (h * h) + k2r * p1 * p1);
                off(e) += w * (-r / (h * h) + k2r * p0 * p1);
                mass(e) += w * r * p0;
                mass(e + 1) += w * r * p1;
            }
        }
        const VectorXd s = mass.cwiseSqrt().cwiseInverse();
        VectorXd d = diag.cwiseProduct(s).cwiseProduct(s);
        VectorXd o(nn - 1);
        for (int i = 0; i + 1 < nn; ++i) o(i) = off(i) * s(i) * s(i + 1);
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver;
        solver.computeFromTridiagonal(d, o, Eigen::EigenvaluesOnly);
        const double lambda = solver.eigenvalues()(k == 0 ? 1 : 0);
        best = std::min(best, lambda);
    }
    return 1 / best;
}

double neumann_eigenvalue_dense(double R1, double R2, int radial_cells, int angular_cells)
{
    const int nr = radial_cells, nt = angular_cells, n = nr * nt;
    const double hr = (R2 - R1) / nr, ht = 2 * pi / nt;
    MatrixXd S = MatrixXd::Zero(n, n);
    VectorXd vol(n);
    auto id = [nt](int i, int j) { return i * nt + ((j % nt) + nt) % nt; };
    for (int i = 0; i < nr; ++i) {
        const double rc = R1 + (i + 0.5) * hr;
        for (int j = 0; j < nt; ++j) {
            const int p = id(i, j);
            vol(p) = rc * hr * ht;
            if (i + 1 < nr) {
                const double c = (R1 + (i + 1) * hr) * ht / hr;
                S(p, p) += c, S(p, id(i + 1, j)) -= c;
            }
            if (i > 0) {
                const double c = (R1 + i * hr) * ht / hr;
                S(p, p) += c, S(p, id(i - 1, j)) -= c;
            }
            const double c = hr / (rc * ht);
            S(p, p) += 2 * c;
            S(p, id(i, j + 1)) -= c;
            S(p, id(i, j - 1)) -= c;
        }
    }
    const VectorXd s = vol.cwiseSqrt().cwiseInverse();
    const MatrixXd A = s.asDiagonal() * S * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(A, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(1);
}

std::vector<PoincareRow> poincare_product_check(double P_A, const FiberSpectrum& spec,
                                                const std::vector<SpectralField>& fields)
{
    std::vector<PoincareRow> rows;
    for (const auto& field : fields) {
        const auto& grid = *field.grid();
        const RadialQuadrature quad(grid, grid.r_min(), grid.r_max());
        double l2 = 0, grad = 0;
        cplx integral = 0;
        for (const auto& [m, v] : field.modes()) {
            const VectorXcd dv = grid.derivative(v, 1);
            const double k2 = double(m.k) * m.k;
            for (int q = 0; q < quad.size(); ++q) {
                const double r = quad.point(q), w = quad.weight(q);
                const cplx val = quad.sample(v, q);
                l2 += 2 * pi * w * std::norm(val) * r;
                grad += 2 * pi * w * (std::norm(quad.sample(dv, q)) + (k2 / (r * r) + m.mu) * std::norm(val)) * r;
                if (m.k == 0 && m.mu == 0) integral += 2 * pi * w * val * r * std::sqrt(spec.volume);
            }
        }
        const double area = pi * (grid.r_max() * grid.r_max() - grid.r_min() * grid.r_min());
        const double mean = integral.real() / (area * spec.volume);
        PoincareRow row;
        row.lhs = std::max(0.0, l2 - mean * mean * area * spec.volume);
        row.rhs = (P_A + spec.poincare_constant) * grad;
        row.ratio = grad > 0 ? row.lhs / grad : 0;
        row.holds = row.lhs <= row.rhs * (1 + 1e-10) + 1e-14;
        rows.push_back(row);
    }
    return rows;
}

} // namespace alg
