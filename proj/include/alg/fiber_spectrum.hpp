#pragma once

#include "alg/numerics.hpp"

#include <compare>
#include <string>
#include <vector>

namespace alg {

struct EigenvalueEntry
{
    double mu = 0;
    int multiplicity = 1;
};

// Discrete spectrum of the fiber Laplacian together with its integral invariants.
struct FiberSpectrum
{
    std::vector<EigenvalueEntry> eigenvalues;
    double volume = 1;
    double poincare_constant = 1;
    bool b1_zero = true;

    // Total number of eigenfunctions counted with multiplicity.
    int mode_count() const;
    // Eigenvalue carried by the eigenfunction with the given ordinal.
    double eigenvalue_of_ordinal(int ordinal) const;
    double smallest_positive() const;
};

// Builds a spectrum from a list of eigenvalues with multiplicities; P_Y is set to 1/mu_1.
FiberSpectrum make_spectrum(std::vector<EigenvalueEntry> entries, double volume, bool b1_zero = true);

double smallest_positive_sqrt(const FiberSpectrum& spec);

// Every violated invariant, one line each. Empty iff valid.
std::vector<std::string> validate(const FiberSpectrum& spec);

// Relative tolerance used to group equal eigenvalues.
inline constexpr double eigenvalue_grouping_tolerance = 1e-12;

struct ModeIndex
{
    int k = 0;
    double mu = 0;
    int mu_ordinal = 0;

    friend bool operator==(const ModeIndex& a, const ModeIndex& b)
    {
        return a.k == b.k && a.mu_ordinal == b.mu_ordinal;
    }
    friend std::strong_ordering operator<=>(const ModeIndex& a, const ModeIndex& b)
    {
        if (auto c = a.mu_ordinal <=> b.mu_ordinal; c != 0) return c;
        return a.k <=> b.k;
    }
};

bool is_valid_mode(const FiberSpectrum& spec, const ModeIndex& mode);

// Orthonormal plane-wave eigenbasis of a flat torus R^n / prod(L_a Z).
// Ordinals are sorted by eigenvalue, then lexicographically by lattice vector.
// For even n the complex coordinates are w_a = x_{2a} + i x_{2a+1}.
class FlatTorusBasis
{
public:
    FlatTorusBasis(std::vector<double> side_lengths, double eigenvalue_cutoff);

    const FiberSpectrum& spectrum() const { return spectrum_; }
    int dimension() const { return static_cast<int>(sides_.size()); }
    int complex_dimension() const { return dimension() / 2; }
    int size() const { return static_cast<int>(lattice_.size()); }
    const std::vector<double>& side_lengths() const { return sides_; }
    double volume() const { return spectrum_.volume; }

    const std::vector<int>& lattice_vector(int ordinal) const { return lattice_[ordinal]; }
    // Ordinal of the given lattice vector, or -1 if it lies above the cutoff.
    int ordinal_of(const std::vector<int>& m) const;
    int conjugate_ordinal(int ordinal) const;
    double eigenvalue(int ordinal) const;
    ModeIndex mode(int k, int ordinal) const { return {k, eigenvalue(ordinal), ordinal}; }

    // Real wavevector xi_a = 2 pi m_a / L_a.
    VectorXd wavevector(int ordinal) const;
    // zeta_a = (xi_{2a} - i xi_{2a+1}) / 2, so that d/dw_a psi = i zeta_a psi.
    VectorXcd holomorphic_wavevector(int ordinal) const;
    cplx evaluate(int ordinal, std::span<const double> x) const;

private:
    std::vector<double> sides_;
    std::vector<std::vector<int>> lattice_;
    std::vector<double> eigen_;
    FiberSpectrum spectrum_;
};

FiberSpectrum build_flat_torus_spectrum(const std::vector<double>& side_lengths, double eigenvalue_cutoff);

} // namespace alg
