#include "alg/ansatz.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace alg {

namespace {

void check_supports(const SpectralField& phi, const CutoffProfile& chi, const CutoffProfile& varphi)
{
    if (chi.kind() == CutoffKind::zero) return;
    if (varphi.kind() == CutoffKind::zero)
        throw std::invalid_argument("glue: base bump is zero while chi is not");
    if (chi.support_lo() < varphi.plateau_lo() || chi.support_hi() > varphi.plateau_hi())
        throw std::invalid_argument("glue: support of chi must lie in the plateau of varphi");
    const auto& g = *phi.grid();
    if (g.r_min() > chi.support_lo() || g.r_max() < chi.plateau_lo())
        throw std::invalid_argument("glue: phi must be defined on the support of chi up to its plateau");
}

MatrixXcd hermitian(const MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

} // namespace

GlueReport glue_ansatz(const SpectralField& phi, const CutoffProfile& chi, const CutoffProfile& varphi, double t,
                       const GlueSamples& samples)
{
    check_supports(phi, chi, varphi);
    if (samples.theta < 1 || samples.fiber_per_dim < 1) throw std::invalid_argument("glue: bad sample counts");
    const JetSynthesizer jets(phi);
    const auto& basis = *phi.basis();
    const auto& grid = *phi.grid();
    const int d = jets.dimension();
    const int nf = basis.dimension();

    std::vector<std::vector<double>> fiber_points;
    {
        long total = 1;
        for (int a = 0; a < nf; ++a) total *= samples.fiber_per_dim;
        for (long idx = 0; idx < total; ++idx) {
            std::vector<double> y(nf);
            long rest = idx;
            for (int a = 0; a < nf; ++a) {
                y[a] = basis.side_lengths()[a] * static_cast<double>(rest % samples.fiber_per_dim) /
                       samples.fiber_per_dim;
                rest /= samples.fiber_per_dim;
            }
            fiber_points.push_back(std::move(y));
        }
    }

    const int nr = grid.size();
    const int per_r = samples.theta * static_cast<int>(fiber_points.size());
    const int total = nr * per_r;

    struct Sample
    {
        MatrixXcd glued_without_t; // I + 2 hess(chi phi)
        MatrixXcd reference;       // I + 2 chi hess(phi)
        double bump = 0;
    };
    std::vector<Sample> data(total);
    std::vector<SampleLocation> locs(total);

    parallel_for(nr, worker_count(), [&](int i) {
        const double r = grid.node(i);
        const auto c = chi.jet(r);
        const double vb = varphi.value(r);
        for (int it = 0; it < samples.theta; ++it) {
            const double th = 2 * pi * it / samples.theta;
            const cplx em = std::polar(1.0, -th), ep = std::polar(1.0, th);
            const cplx cz = 0.5 * em * c[1], czb = 0.5 * ep * c[1];
            const double czzb = 0.25 * (c[2] + c[1] / r);
            for (std::size_t j = 0; j < fiber_points.size(); ++j) {
                const int idx = (i * samples.theta + it) * static_cast<int>(fiber_points.size()) + static_cast<int>(j);
                SampleLocation loc{r, th, fiber_points[j]};
                const PointJet J = jets.at(loc);
                const MatrixXcd I = MatrixXcd::Identity(d, d);
                MatrixXcd h = c[0] * J.hess;
                h(0, 0) += J.value.real() * czzb;
                for (int b = 0; b < d; ++b) h(0, b) += cz * J.d01(b);
                for (int a = 0; a < d; ++a) h(a, 0) += J.d10(a) * czb;
                data[idx] = {hermitian(I + 2 * h), hermitian(I + 2 * c[0] * J.hess), vb};
                locs[idx] = std::move(loc);
            }
        }
    });

    GlueReport rep;
    // constants of the proof, measured where chi varies
    for (int idx = 0; idx < total; ++idx) {
        const auto& s = data[idx];
        const MatrixXcd P = s.glued_without_t - s.reference;
        if (P.norm() == 0) continue;
        const double h00 = s.reference(0, 0).real();
        if (!(h00 > 0)) throw std::domain_error("glue: reference form is not positive in the base direction");
        rep.c2 = std::max(rep.c2, std::max(0.0, -P(0, 0).real() / h00));
        if (d > 1) {
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s.reference.bottomRightCorner(d - 1, d - 1));
            if (es.eigenvalues().minCoeff() <= 0)
                throw std::domain_error("glue: reference form is not positive in the fiber directions");
            const VectorXcd pv = es.operatorInverseSqrt() * P.block(1, 0, d - 1, 1);
            rep.c1 = std::max(rep.c1, 2 * pv.norm() / std::sqrt(h00));
        }
    }
    rep.c3 = rep.c1 * rep.c1 / 2;
    rep.t_min = 1000 * (rep.c2 + rep.c3 + 1);
    rep.t = t < 0 ? rep.t_min : t;

    rep.glued.d = rep.reference.d = d;
    rep.glued.samples = rep.reference.samples = locs;
    rep.glued.eigenvalues.resize(total, d);
    rep.reference.eigenvalues.resize(total, d);
    std::vector<double> rel(total);
    parallel_for(total, worker_count(), [&](int idx) {
        const auto& s = data[idx];
        MatrixXcd g = s.glued_without_t;
        g(0, 0) += rep.t * s.bump;
        Eigen::SelfAdjointEigenSolver<MatrixXcd> eg(g, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> er(s.reference, Eigen::EigenvaluesOnly);
        rep.glued.eigenvalues.row(idx) = (eg.eigenvalues().array() - 1).transpose();
        rep.reference.eigenvalues.row(idx) = (er.eigenvalues().array() - 1).transpose();
        if (er.eigenvalues().minCoeff() > 0) {
            Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> ge(g, s.reference, Eigen::EigenvaluesOnly);
            rel[idx] = ge.eigenvalues().minCoeff();
        } else {
            rel[idx] = -std::numeric_limits<double>::infinity();
        }
    });
    rep.glued_min = positivity_check(rep.glued);
    rep.reference_min = positivity_check(rep.reference);
    rep.relative_min = std::numeric_limits<double>::infinity();
    for (double v : rel) rep.relative_min = std::min(rep.relative_min, v);
    return rep;
}

SpectralField gluing_fixture(int d, double R, double A, double B, int nodes)
{
    if (d < 2) throw std::invalid_argument("gluing fixture: d must be >= 2");
    if (!(R > 4)) throw std::invalid_argument("gluing fixture: R must exceed 4");
    auto basis = std::make_shared<const FlatTorusBasis>(std::vector<double>(2 * (d - 1), 1.0), 4 * pi * pi * 1.5);
    auto grid = make_grid(R - 3, R + 3, nodes, Spacing::uniform);
    SpectralField phi(basis, grid);
    const double root_v = std::sqrt(basis->volume());
    std::vector<int> e1(basis->dimension(), 0);
    e1[0] = 1;
    const int plus = basis->ordinal_of(e1);
    e1[0] = -1;
    const int minus = basis->ordinal_of(e1);
    VectorXcd wave(grid->size()), constant = VectorXcd::Constant(grid->size(), B * root_v);
    for (int i = 0; i < grid->size(); ++i) wave(i) = 0.5 * A * root_v * R / grid->node(i);
    if (B != 0) phi.set(basis->mode(0, 0), constant);
    if (A != 0) {
        phi.set(basis->mode(0, plus), wave);
        phi.set(basis->mode(0, minus), wave);
    }
    return phi;
}

} // namespace alg
