#include "alg/hessian.hpp"

#include <Eigen/Eigenvalues>

#include <limits>

namespace alg {

JetSynthesizer::JetSynthesizer(const SpectralField& field, const SpectralField* base_correction)
    : basis_(field.basis()), grid_(field.grid())
{
    if (!basis_) throw std::invalid_argument("jet synthesis: field needs a flat-torus basis");
    if (basis_->dimension() % 2 != 0) throw std::invalid_argument("jet synthesis: fiber must have even real dimension");
    for (const auto& [m, v] : field.modes()) {
        Mode mode{m.k, m.mu_ordinal, basis_->holomorphic_wavevector(m.mu_ordinal), basis_->wavevector(m.mu_ordinal),
                  v, grid_->derivative(v, 1), grid_->derivative(v, 2)};
        modes_.push_back(std::move(mode));
    }
    if (base_correction) {
        for (const auto& [m, v] : base_correction->modes()) {
            if (m.mu_ordinal != 0) throw std::invalid_argument("jet synthesis: base correction must be fiber-constant");
            base_.emplace_back(m.k, v);
        }
    }
}

PointJet JetSynthesizer::at(const SampleLocation& p) const
{
    const int d = dimension();
    PointJet jet{0, VectorXcd::Zero(d), VectorXcd::Zero(d), MatrixXcd::Zero(d, d)};
    const auto st = grid_->interpolation(p.r);
    auto sample = [&](const VectorXcd& v) {
        cplx acc = 0;
        for (int j = 0; j < st.weights.size(); ++j) acc += st.weights(j) * v(st.start + j);
        return acc;
    };
    const double r = p.r;
    const cplx em = std::polar(1.0, -p.theta), ep = std::polar(1.0, p.theta);
    const double norm = 1 / std::sqrt(basis_->volume());
    const cplx I(0, 1);
    for (const auto& m : modes_) {
        double phase = m.k * p.theta;
        for (int a = 0; a < m.xi.size(); ++a) phase += m.xi(a) * (a < static_cast<int>(p.y.size()) ? p.y[a] : 0.0);
        const cplx E = std::polar(norm, phase);
        const cplx v = sample(m.v), v1 = sample(m.v1), v2 = sample(m.v2);
        const cplx dz = 0.5 * em * (v1 + double(m.k) * v / r);
        const cplx dzb = 0.5 * ep * (v1 - double(m.k) * v / r);
        jet.value += v * E;
        jet.d10(0) += dz * E;
        jet.d01(0) += dzb * E;
        jet.hess(0, 0) += 0.25 * (v2 + v1 / r - double(m.k) * m.k * v / (r * r)) * E;
        for (int a = 1; a < d; ++a) {
            const cplx za = m.zeta(a - 1);
            jet.d10(a) += I * za * v * E;
            jet.d01(a) += I * std::conj(za) * v * E;
            jet.hess(0, a) += dz * I * std::conj(za) * E;
            jet.hess(a, 0) += dzb * I * za * E;
            for (int b = 1; b < d; ++b) jet.hess(a, b) -= za * std::conj(m.zeta(b - 1)) * v * E;
        }
    }
    for (const auto& [k, v] : base_) jet.hess(0, 0) += sample(v) * std::polar(norm, k * p.theta);
    return jet;
}

std::vector<int> HermitianEigenField::kahler_violations() const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if ((1 + eigenvalues.row(i).array()).minCoeff() <= 0) out.push_back(i);
    return out;
}

VectorXd relative_eigenvalues(const MatrixXcd& complex_hessian)
{
    const MatrixXcd h = complex_hessian + complex_hessian.adjoint();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

PositivityReport positivity_check(const HermitianEigenField& field)
{
    PositivityReport rep;
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int i = 0; i < field.size(); ++i) {
        const double m = 1 + field.eigenvalues.row(i).minCoeff();
        if (m < rep.min_eigenvalue) {
            rep.min_eigenvalue = m;
            rep.witness = i;
        }
    }
    if (rep.witness >= 0 && rep.witness < static_cast<int>(field.samples.size()))
        rep.location = field.samples[rep.witness];
    return rep;
}

} // namespace alg
