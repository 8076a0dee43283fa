#pragma once

#include "alg/cutoff.hpp"
#include "alg/hessian.hpp"
#include "alg/spectral_field.hpp"

#include <functional>
#include <vector>

namespace alg {

// ---- radial potential of a compactly supported radial source -------------------------

struct RadialSource
{
    double rho1 = 1;
    std::function<double(double)> f; // taken as zero beyond rho1
};

enum class SignConvention { as_printed, corrected };

struct RadialPotential
{
    std::vector<double> rho;
    std::vector<double> h;
    double rho1 = 1;
};

struct RadialPotentialOptions
{
    int panels = 1024;          // panels on [rho_lo, rho1]
    double rho_lo_ratio = 0.1;   // innermost node is rho_lo_ratio * rho1
    double rho_hi_ratio = 2;    // nodes continue to rho_hi_ratio * rho1
};

// as_printed: h = 4 log(rho) int_rho^rho1 x f dx - 4 int_rho^rho1 x log(x) f dx,
// which solves h'' + h'/rho = -4f; corrected is its negative and solves the +4f equation.
RadialPotential radial_potential(const RadialSource& src, SignConvention convention,
                                 const RadialPotentialOptions& options = {});

// max |h'' + h'/rho - s 4 f| / max|f| over nodes whose difference stencil does not straddle rho1,
// with s = +1 (corrected) or -1 (as_printed).
double radial_potential_residual(const RadialPotential& pot, const RadialSource& src, SignConvention convention);

// ---- constraint bump -----------------------------------------------------------------

struct ConstraintParams
{
    double K = 1;
    int d = 3;
    int ord_sigma = 2;
    double vol_Y = 1;
    double gamma_chi = 5;
    double err = 0;
    double beta = 1;
    double R0 = 100;
};

// Conformal factor lambda(rho) of a quasi-model metric, with 1/K <= lambda <= K.
using ConformalFactor = std::function<double(double)>;

// lambda(rho) = K^{0.9 sin(7 log rho)}
ConformalFactor oscillating_conformal_factor(double K);

struct ConstraintResult
{
    double t0 = 0;
    double t = 0;
    std::pair<double, double> s0_interval{0, 0};
    double s0 = 0;
    double s0_closed_form_model = 0; // value for the exact model metric (K = 1)
    double eta_amplitude = 0;        // max |s0 chi|
};

double constraint_t0(const ConstraintParams& p);

// Solves d int eta ^ omega^{d-1} = Err for s on the quasi-model metric lambda * model, with
// eta = s chi(rho t) (i/2) du dubar and t = t_factor * t0.
ConstraintResult constraint_solve(const ConstraintParams& p, const CutoffProfile& chi,
                                  const ConformalFactor& lambda = {}, double t_factor = 2);

// Eigenvalues of (omega + eta) - model relative to the model, sampled over the bump support.
HermitianEigenField constraint_eigenfield(const ConstraintParams& p, const CutoffProfile& chi,
                                          const ConformalFactor& lambda, double s, double t, int samples = 2001);

// ---- gluing ------------------------------------------------------------------------

struct GlueReport
{
    HermitianEigenField glued;     // omega_glued - model
    HermitianEigenField reference; // H_chi - model
    double c1 = 0, c2 = 0, c3 = 0;
    double t_min = 0;
    double t = 0;
    PositivityReport glued_min;
    PositivityReport reference_min;
    double relative_min = 0; // smallest generalized eigenvalue of glued against H_chi
};

struct GlueSamples
{
    int theta = 8;
    int fiber_per_dim = 4;
};

// omega_glued = omega_model + i ddbar(chi phi) + t varphi (i/2) dz dzbar on the grid of phi.
// With t < 0 the proof threshold t_min is used.
GlueReport glue_ansatz(const SpectralField& phi, const CutoffProfile& chi, const CutoffProfile& varphi, double t,
                       const GlueSamples& samples = {});

// phi = B + A (R / r) cos(2 pi x1) on the unit torus of complex dimension d - 1, r in [R - 3, R + 3].
SpectralField gluing_fixture(int d, double R, double A, double B, int nodes = 241);

// ---- local i ddbar decomposition on the punctured disc ------------------------------

// Components of omega = a i du dubar + du ^ F01 + dubar ^ F10 + omega_Y(u), stored per fiber
// mode of a flat torus and sampled on a polar grid (rho uniform, theta periodic).
struct IddbarData
{
    std::shared_ptr<const FlatTorusBasis> basis;
    std::vector<int> ordinals;
    std::vector<double> rho;
    int n_theta = 8;
    // per mode: samples indexed [i * n_theta + t]
    std::vector<VectorXcd> a;
    std::vector<std::vector<VectorXcd>> f10; // [mode][component]
    std::vector<std::vector<VectorXcd>> f01;
    std::vector<std::vector<std::vector<VectorXcd>>> w; // [mode][a][b]
};

// Potential mode phi_j(rho, theta) = amplitude * P(rho) e^{ik theta}; P returns (P, P', P'').
struct PotentialMode
{
    int ordinal = 0;
    int k = 0;
    cplx amplitude = 1;
    std::function<std::array<double, 3>(double)> radial;
};

// Exact forward construction of i ddbar phi + f(rho, theta) i du dubar (+ the flat fiber form).
IddbarData iddbar_forward(std::shared_ptr<const FlatTorusBasis> basis, const std::vector<PotentialMode>& modes,
                          const std::function<double(double, double)>& f, double rho_lo, double rho_hi, int n_rho,
                          int n_theta);

struct IddbarReport
{
    double residual_f10 = 0; // F10 - zeta d phi / d ubar, F01 + conj(zeta) d phi / du
    double residual_a = 0;   // non-constant fiber part of a - d^2 phi / du dubar
    double non_gradient = 0; // part of F outside the range of the fiber gradient
    VectorXd f_base;         // extracted f on the grid
    bool obstruction = false;
};

IddbarReport iddbar_decompose_check(const IddbarData& data);

// ---- sigma averaging -----------------------------------------------------------------

struct SigmaSamples
{
    int n_radial = 1;
    int n_theta = 1;
    int n_fiber = 1;
    VectorXcd values; // [(i * n_theta + t) * n_fiber + j]
};

// Average over the cyclic group generated by theta -> theta + 2 pi / n together with the fiber
// permutation (fiber_perm applied n times must be the identity).
SigmaSamples sigma_average(const SigmaSamples& in, int n, const std::vector<int>& fiber_perm);

} // namespace alg
