#include "alg/decay_bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace alg {

std::pair<SpectralField, SpectralField> fiber_average_split(const SpectralField& field)
{
    SpectralField avg = field.empty_like(), rest = field.empty_like();
    for (const auto& [m, v] : field.modes()) (m.mu_ordinal == 0 ? avg : rest).set(m, v);
    return {std::move(avg), std::move(rest)};
}

NonlinearitySamples ma_nonlinearity(const HermitianEigenField& field)
{
    NonlinearitySamples out{VectorXd(field.size()), field.kahler_violations()};
    for (int i = 0; i < field.size(); ++i) out.q(i) = ma_nonlinearity(field.eigenvalues.row(i).transpose());
    return out;
}

SpectralField base_part_identity(const SpectralField& q_avg)
{
    SpectralField out = q_avg.empty_like();
    for (const auto& [m, v] : q_avg.modes()) {
        if (m.mu_ordinal != 0) throw std::invalid_argument("base part identity: input is not fiber-constant");
        out.set(m, v / 4.0);
    }
    return out;
}

DecayReport fit_decay_exponent(const std::vector<double>& radii, const std::vector<double>& norms)
{
    if (radii.size() < 5 || norms.size() != radii.size())
        throw std::invalid_argument("decay fit: need at least five annuli");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("decay fit: radii must increase");
    if (radii.back() < 10 * radii.front() * (1 - 1e-12))
        throw std::invalid_argument("decay fit: annuli must span at least one decade");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(norms[i] > 0)) throw std::invalid_argument("decay fit: nonpositive norm");
        x.push_back(std::log(radii[i]));
        y.push_back(std::log(norms[i]));
    }
    const auto fit = linear_fit(x, y);
    DecayReport rep;
    rep.radii = radii;
    rep.norms = norms;
    rep.exponent = -fit.slope;
    rep.r_squared = fit.r_squared;
    rep.residual_band = {fit.residual_min, fit.residual_max};
    return rep;
}

namespace {

struct SampleLayout
{
    std::vector<double> theta;
    std::vector<std::vector<double>> fiber;
    std::vector<int> box; // per fiber coordinate, largest |m_a| of the nonlinearity
};

SampleLayout layout_for(const BootstrapState& state, int d)
{
    const auto& basis = *state.potential.basis();
    const int n = basis.dimension();
    int kmax = std::max(state.potential.max_abs_k(), state.base_correction.max_abs_k());
    std::vector<int> mmax(n, 0);
    for (const auto& [m, v] : state.potential.modes()) {
        const auto& lv = basis.lattice_vector(m.mu_ordinal);
        for (int a = 0; a < n; ++a) mmax[a] = std::max(mmax[a], std::abs(lv[a]));
    }
    SampleLayout lay;
    const int nt = kmax == 0 ? 1 : 2 * d * kmax + 1;
    for (int t = 0; t < nt; ++t) lay.theta.push_back(2 * pi * t / nt);
    std::vector<int> count(n);
    for (int a = 0; a < n; ++a) {
        count[a] = mmax[a] == 0 ? 1 : 2 * d * mmax[a] + 1;
        lay.box.push_back(d * mmax[a]);
    }
    std::vector<int> idx(n, 0);
    while (true) {
        std::vector<double> y(n);
        for (int a = 0; a < n; ++a) y[a] = basis.side_lengths()[a] * idx[a] / count[a];
        lay.fiber.push_back(std::move(y));
        int a = n - 1;
        while (a >= 0 && idx[a] == count[a] - 1) idx[a] = 0, --a;
        if (a < 0) break;
        ++idx[a];
    }
    return lay;
}

struct PointSamples
{
    double max_form = 0; // largest |lambda|
    double max_q = 0;
    std::vector<double> q; // theta-major, then fiber point
};

PointSamples sample_radius(const JetSynthesizer& jets, const SampleLayout& lay, double r)
{
    PointSamples out;
    out.q.reserve(lay.theta.size() * lay.fiber.size());
    for (double th : lay.theta)
        for (const auto& y : lay.fiber) {
            const auto jet = jets.at({r, th, y});
            const VectorXd lambda = relative_eigenvalues(jet.hess);
            if ((1 + lambda.array()).minCoeff() <= 0)
                throw std::domain_error("Kahler condition violated at r = " + std::to_string(r));
            const double q = ma_nonlinearity(lambda);
            out.q.push_back(q);
            out.max_form = std::max(out.max_form, lambda.cwiseAbs().maxCoeff());
            out.max_q = std::max(out.max_q, std::abs(q));
        }
    return out;
}

struct AnnulusSups
{
    std::vector<double> radii, form, q;
};

AnnulusSups annulus_sups(const JetSynthesizer& jets, const SampleLayout& lay, const std::vector<double>& starts,
                         int radial_samples, unsigned threads)
{
    AnnulusSups out{starts, std::vector<double>(starts.size()), std::vector<double>(starts.size())};
    parallel_for(starts.size(), threads, [&](std::size_t i) {
        for (int s = 0; s < radial_samples; ++s) {
            const double r = starts[i] + 2.0 * s / (radial_samples - 1);
            const auto ps = sample_radius(jets, lay, r);
            out.form[i] = std::max(out.form[i], ps.max_form);
            out.q[i] = std::max(out.q[i], ps.max_q);
        }
    });
    return out;
}

} // namespace

BootstrapStep bootstrap_step(const BootstrapState& state, int d, double beta_in, const BootstrapOptions& options)
{
    if (!(beta_in > 0)) throw std::invalid_argument("bootstrap: insufficient decay (beta_in <= 0)");
    const auto& phi = state.potential;
    if (!phi.basis()) throw std::invalid_argument("bootstrap: field needs a flat-torus basis");
    const auto& basis = *phi.basis();
    if (d != 1 + basis.complex_dimension()) throw std::invalid_argument("bootstrap: d must be 1 + fiber complex dimension");
    const auto& grid = *phi.grid();
    const double lo = options.annulus_lo > 0 ? options.annulus_lo : 100 / beta_in;
    const double hi = options.annulus_hi > 0 ? options.annulus_hi : 10 * lo;
    if (hi + 2 > grid.r_max() || lo < grid.r_min()) throw std::invalid_argument("bootstrap: annuli outside the grid");
    std::vector<double> starts;
    for (int i = 0; i < options.annulus_count; ++i)
        starts.push_back(lo * std::pow(hi / lo, double(i) / (options.annulus_count - 1)));

    const SampleLayout lay = layout_for(state, d);
    const JetSynthesizer jets(phi, &state.base_correction);
    const auto sups_in = annulus_sups(jets, lay, starts, options.radial_samples, options.threads);

    // Project Q onto modes (k, m) with |k| <= d kmax and |m_a| <= d max|m_a|.
    const int nt = static_cast<int>(lay.theta.size());
    const int ny = static_cast<int>(lay.fiber.size());
    const int kq = (nt - 1) / 2;
    std::vector<std::vector<int>> lattice;
    {
        const int n = basis.dimension();
        std::vector<int> m(n);
        for (int a = 0; a < n; ++a) m[a] = -lay.box[a];
        while (true) {
            lattice.push_back(m);
            int a = n - 1;
            while (a >= 0 && m[a] == lay.box[a]) m[a] = -lay.box[a], --a;
            if (a < 0) break;
            ++m[a];
        }
    }
    std::vector<int> ordinals;
    MatrixXcd fiber_phase(lattice.size(), ny);
    for (std::size_t j = 0; j < lattice.size(); ++j) {
        const int ord = basis.ordinal_of(lattice[j]);
        if (ord < 0) throw std::invalid_argument("bootstrap: fiber basis cutoff too small for the nonlinearity");
        ordinals.push_back(ord);
        const VectorXd xi = basis.wavevector(ord);
        for (int s = 0; s < ny; ++s) {
            double ph = 0;
            for (int a = 0; a < xi.size(); ++a) ph += xi(a) * lay.fiber[s][a];
            fiber_phase(j, s) = std::polar(1.0, -ph);
        }
    }
    const int nk = 2 * kq + 1;
    const int nodes = grid.size();
    std::vector<MatrixXcd> coeff(nodes); // (k index, lattice index)
    parallel_for(nodes, options.threads, [&](std::size_t i) {
        const auto ps = sample_radius(jets, lay, grid.node(static_cast<int>(i)));
        MatrixXcd angular = MatrixXcd::Zero(nk, ny);
        for (int k = -kq; k <= kq; ++k)
            for (int t = 0; t < nt; ++t) {
                const cplx e = std::polar(1.0, -k * lay.theta[t]);
                for (int s = 0; s < ny; ++s) angular(k + kq, s) += e * ps.q[t * ny + s];
            }
        coeff[i] = angular * fiber_phase.transpose() * (std::sqrt(basis.volume()) / (double(nt) * ny));
    });
    double global = 0;
    for (const auto& c : coeff) global = std::max(global, c.cwiseAbs().maxCoeff());

    SpectralField q_field = phi.empty_like();
    for (int k = -kq; k <= kq; ++k)
        for (std::size_t j = 0; j < lattice.size(); ++j) {
            VectorXcd prof(nodes);
            for (int i = 0; i < nodes; ++i) prof(i) = coeff[i](k + kq, static_cast<Eigen::Index>(j));
            if (global > 0 && prof.cwiseAbs().maxCoeff() > 1e-14 * global) q_field.set(phi.mode(k, ordinals[j]), prof);
        }

    auto [q_avg, q_zero] = fiber_average_split(q_field);
    q_zero *= 2.0;
    q_avg *= 2.0;
    SpectralField phi_new = solve_full(q_zero, {}, {}, options.threads);
    SpectralField base_new = base_part_identity(q_avg);
    BootstrapState next(std::move(phi_new), std::move(base_new));

    const JetSynthesizer jets_out(next.potential, &next.base_correction);
    const auto sups_out = annulus_sups(jets_out, lay, starts, options.radial_samples, options.threads);

    auto fit_or_zero = [&](const std::vector<double>& norms) {
        const bool all_zero = std::all_of(norms.begin(), norms.end(), [](double v) { return v == 0; });
        if (all_zero) {
            DecayReport rep;
            rep.radii = starts;
            rep.norms = norms;
            rep.exponent = std::numeric_limits<double>::infinity();
            return rep;
        }
        return fit_decay_exponent(starts, norms);
    };
    return {beta_in, fit_or_zero(sups_in.form), fit_or_zero(sups_in.q), fit_or_zero(sups_out.form), std::move(next)};
}

SpectralField synthetic_bootstrap_field(double beta, double r_min, double r_max, int nodes)
{
    // Two nonlinearity passes of (cos 2 pi x1 + cos 2 pi x3) reach |m_1|, |m_3| <= 9.
    const double cutoff = 4 * pi * pi * 162 * (1 + 1e-9);
    auto basis = std::make_shared<const FlatTorusBasis>(std::vector<double>{1, 1, 1, 1}, cutoff);
    auto grid = make_grid(r_min, r_max, nodes);
    SpectralField phi(basis, grid);
    const double amplitude = 0.2 * std::pow(r_min, beta) / (2 * pi * pi);
    VectorXcd v(grid->size());
    for (int i = 0; i < grid->size(); ++i) v(i) = amplitude * std::pow(grid->node(i), -beta) * 0.5;
    for (const auto& m : {std::vector<int>{1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, -1, 0}})
        phi.set(phi.mode(0, basis->ordinal_of(m)), v);
    return phi;
}

double energy_decay_exponent(double mu_c)
{
    if (!(mu_c > 0 && mu_c < 1)) throw std::invalid_argument("energy decay: contraction must lie in (0, 1)");
    return -std::log(mu_c) / std::log(2.0);
}

EnergySequence generate_energy_sequence(double r0, double e0, double mu_c, int steps, double floor, unsigned seed)
{
    energy_decay_exponent(mu_c);
    EnergySequence seq{r0, {e0}, mu_c};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 1; n <= steps; ++n) {
        const double ratio = floor >= 1 ? mu_c : mu_c * (floor + (1 - floor) * unit(rng));
        seq.values.push_back(seq.values.back() * ratio);
    }
    return seq;
}

EnergyCheck verify_energy_decay(const EnergySequence& seq)
{
    EnergyCheck chk;
    chk.beta0 = energy_decay_exponent(seq.mu_c);
    const double e0 = seq.values.front();
    chk.constant = e0 * std::pow(seq.r0, chk.beta0);
    for (std::size_t n = 0; n < seq.values.size(); ++n) {
        const double r = std::ldexp(seq.r0, static_cast<int>(n));
        const double ratio = e0 > 0 ? seq.values[n] * std::pow(2.0, n * chk.beta0) / e0 : 0;
        chk.worst_ratio = std::max(chk.worst_ratio, ratio);
        if (seq.values[n] > chk.constant * std::pow(r, -chk.beta0) * (1 + 1e-12)) chk.holds = false;
    }
    return chk;
}

} // namespace alg
