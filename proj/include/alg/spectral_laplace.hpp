#pragma once

#include "alg/spectral_field.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace alg {

// Radial mode operator u'' + u'/r - (k^2/r^2 + mu) u by finite differences.
RadialProfile mode_operator_apply(const RadialProfile& profile);

// Largest |L u - f| over nodes with centered stencils, divided by max |f| (or 1 if f = 0).
double interior_residual(const RadialProfile& u, const VectorXcd& rhs);

enum class ZeroModeBranch {
    bounded,   // (0,0): solution bounded at infinity, Dirichlet at r_min
    newtonian, // (0,0): kernel log max(r, s) plus a constant; grows like (total mass) log r
};

struct GreenOptions
{
    ZeroModeBranch zero_mode = ZeroModeBranch::bounded;
    // Only for the newtonian branch: reject a nonzero total mass.
    bool require_bounded = true;
    int quadrature_points = 12;
};

class LogGrowthObstruction : public std::domain_error
{
public:
    explicit LogGrowthObstruction(double mass)
        : std::domain_error("(0,0) mode: nonzero total mass forces logarithmic growth"), total_mass(mass)
    {
    }
    double total_mass;
};

struct GreenSolution
{
    RadialProfile u;
    double residual = 0;
};

// Solves L_{k,mu} u = rhs with u(r_min) = boundary and the decaying branch at infinity
// (rhs is taken to vanish beyond r_max).
GreenSolution mode_greens_solve(const ModeIndex& mode, const RadialProfile& rhs, cplx boundary,
                                const GreenOptions& options = {});

// Decaying homogeneous solution with u(r_min) = boundary; the constant for (0,0).
RadialProfile harmonic_mode(const ModeIndex& mode, cplx boundary, const GridPtr& grid);

using BoundarySlice = std::map<ModeIndex, cplx>;

// Mode-by-mode Green solve plus harmonic correction, in sorted mode order.
SpectralField solve_full(const SpectralField& rhs, const BoundarySlice& boundary, const GreenOptions& options = {},
                         unsigned threads = 0);

double annulus_norm(const SpectralField& field, double R1, double R2, double weight);
double sector_norm(const SpectralField& field, double R, double half_width, double theta0);
double weighted_holder_seminorm(const SpectralField& field, double weight, int order);

struct PoincareOptions
{
    int elements = 400;
};

double neumann_poincare_annulus(double R1, double R2, int fourier_cutoff, const PoincareOptions& options = {});

// Smallest positive Neumann eigenvalue of the annulus from a dense finite-volume
// discretization in polar coordinates (independent check of the modal solve).
double neumann_eigenvalue_dense(double R1, double R2, int radial_cells, int angular_cells);

struct PoincareRow
{
    double lhs = 0; // integral of (u - mean)^2
    double rhs = 0; // (P_A + P_Y) times integral of |grad u|^2
    double ratio = 0;
    bool holds = true;
};

std::vector<PoincareRow> poincare_product_check(double P_A, const FiberSpectrum& spec,
                                                const std::vector<SpectralField>& fields);

} // namespace alg
