#pragma once

#include "alg/fiber_spectrum.hpp"
#include "alg/radial.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace alg {

// A function on [r_min, r_max] x S^1 x Y stored as radial profiles per separated mode
// v(r) e^{ik theta} psi_j(y). Modes absent from the map are zero.
class SpectralField
{
public:
    using ModeMap = std::map<ModeIndex, VectorXcd>;

    SpectralField(std::shared_ptr<const FiberSpectrum> spectrum, GridPtr grid);
    // Uses the basis to pair each fiber ordinal with its complex conjugate.
    SpectralField(std::shared_ptr<const FlatTorusBasis> basis, GridPtr grid);

    const FiberSpectrum& spectrum() const { return *spectrum_; }
    const std::shared_ptr<const FiberSpectrum>& spectrum_ptr() const { return spectrum_; }
    const std::shared_ptr<const FlatTorusBasis>& basis() const { return basis_; }
    const GridPtr& grid() const { return grid_; }
    const ModeMap& modes() const { return modes_; }
    bool empty() const { return modes_.empty(); }
    // Same spectrum, basis and grid; no modes.
    SpectralField empty_like() const
    {
        SpectralField f = *this;
        f.modes_.clear();
        return f;
    }

    ModeIndex mode(int k, int ordinal) const { return {k, spectrum_->eigenvalue_of_ordinal(ordinal), ordinal}; }
    void set(const ModeIndex& m, VectorXcd values);
    void add(const ModeIndex& m, const VectorXcd& values);
    void set(const RadialProfile& p) { set(p.mode, p.values); }
    bool has(const ModeIndex& m) const { return modes_.count(m) != 0; }
    const VectorXcd& values(const ModeIndex& m) const;
    RadialProfile profile(const ModeIndex& m) const { return {m, grid_, values(m)}; }
    int max_abs_k() const;

    // Ordinal of the complex conjugate eigenfunction (identity for real eigenbases).
    int conjugate_ordinal(int ordinal) const;
    // Largest |v_{-k, j*} - conj(v_{k, j})| over all modes; zero for a real field.
    double reality_defect() const;

    bool compatible(const SpectralField& other) const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator*=(cplx s);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

    // Value at (r, theta) of the fiber coefficient with the given ordinal.
    cplx fiber_coefficient(int ordinal, double r, double theta) const;

private:
    void check_mode(const ModeIndex& m) const;

    std::shared_ptr<const FiberSpectrum> spectrum_;
    std::shared_ptr<const FlatTorusBasis> basis_;
    GridPtr grid_;
    ModeMap modes_;
};

// Raised when a per-mode operation fails inside a field-level operation.
class ModeError : public std::runtime_error
{
public:
    ModeError(const ModeIndex& m, const std::string& what)
        : std::runtime_error("mode (k=" + std::to_string(m.k) + ", ordinal=" + std::to_string(m.mu_ordinal) +
                             "): " + what),
          mode(m)
    {
    }
    ModeIndex mode;
};

} // namespace alg
