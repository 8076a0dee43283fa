#include "alg/spectral_field.hpp"

#include <algorithm>

namespace alg {

SpectralField::SpectralField(std::shared_ptr<const FiberSpectrum> spectrum, GridPtr grid)
    : spectrum_(std::move(spectrum)), grid_(std::move(grid))
{
    if (!spectrum_ || !grid_) throw std::invalid_argument("spectral field: missing spectrum or grid");
    if (spectrum_->eigenvalues.empty() || spectrum_->eigenvalues.front().mu != 0 ||
        spectrum_->eigenvalues.front().multiplicity != 1)
        throw std::invalid_argument("spectral field: the fiber must be connected (mu = 0 with multiplicity 1)");
}

SpectralField::SpectralField(std::shared_ptr<const FlatTorusBasis> basis, GridPtr grid)
    : SpectralField(std::shared_ptr<const FiberSpectrum>(basis, &basis->spectrum()), std::move(grid))
{
    basis_ = std::move(basis);
}

void SpectralField::check_mode(const ModeIndex& m) const
{
    if (!is_valid_mode(*spectrum_, m)) throw std::invalid_argument("spectral field: mode not valid for the spectrum");
}

void SpectralField::set(const ModeIndex& m, VectorXcd values)
{
    check_mode(m);
    if (values.size() != grid_->size()) throw std::invalid_argument("spectral field: profile length differs from grid");
    if (!values.allFinite()) throw std::invalid_argument("spectral field: non-finite samples");
    ModeIndex key = m;
    key.mu = spectrum_->eigenvalue_of_ordinal(m.mu_ordinal);
    modes_[key] = std::move(values);
}

void SpectralField::add(const ModeIndex& m, const VectorXcd& values)
{
    auto it = modes_.find(m);
    if (it == modes_.end()) {
        set(m, values);
        return;
    }
    if (values.size() != grid_->size()) throw std::invalid_argument("spectral field: profile length differs from grid");
    it->second += values;
}

const VectorXcd& SpectralField::values(const ModeIndex& m) const
{
    auto it = modes_.find(m);
    if (it == modes_.end()) throw std::out_of_range("spectral field: mode not present");
    return it->second;
}

int SpectralField::max_abs_k() const
{
    int k = 0;
    for (const auto& [m, v] : modes_) k = std::max(k, std::abs(m.k));
    return k;
}

int SpectralField::conjugate_ordinal(int ordinal) const
{
    return basis_ ? basis_->conjugate_ordinal(ordinal) : ordinal;
}

double SpectralField::reality_defect() const
{
    double defect = 0;
    for (const auto& [m, v] : modes_) {
        const int cj = conjugate_ordinal(m.mu_ordinal);
        const ModeIndex partner{-m.k, m.mu, cj};
        auto it = modes_.find(partner);
        if (cj < 0) {
            defect = std::max(defect, v.cwiseAbs().maxCoeff());
        } else if (it == modes_.end()) {
            defect = std::max(defect, v.cwiseAbs().maxCoeff());
        } else {
            defect = std::max(defect, (it->second - v.conjugate()).cwiseAbs().maxCoeff());
        }
    }
    return defect;
}

bool SpectralField::compatible(const SpectralField& other) const
{
    return (spectrum_ == other.spectrum_ || (spectrum_->volume == other.spectrum_->volume &&
                                             spectrum_->mode_count() == other.spectrum_->mode_count())) &&
           (grid_ == other.grid_ || grid_->same_as(*other.grid_));
}

SpectralField& SpectralField::operator+=(const SpectralField& other)
{
    if (!compatible(other)) throw std::invalid_argument("spectral field: incompatible spectrum or grid");
    for (const auto& [m, v] : other.modes_) add(m, v);
    return *this;
}

SpectralField& SpectralField::operator*=(cplx s)
{
    for (auto& [m, v] : modes_) v *= s;
    return *this;
}

cplx SpectralField::fiber_coefficient(int ordinal, double r, double theta) const
{
    cplx acc = 0;
    for (const auto& [m, v] : modes_)
        if (m.mu_ordinal == ordinal) acc += grid_->interpolate(v, r) * std::polar(1.0, m.k * theta);
    return acc;
}

} // namespace alg
