#pragma once

#include "alg/hessian.hpp"
#include "alg/spectral_laplace.hpp"

#include <utility>
#include <vector>

namespace alg {

// (fiber-constant part, zero-fiber-mean part); an exact partition of the modes.
std::pair<SpectralField, SpectralField> fiber_average_split(const SpectralField& field);

// Q = -sum_{j>=2} e_j(lambda).
template <typename Derived>
double ma_nonlinearity(const Eigen::MatrixBase<Derived>& lambda)
{
    const auto e = elementary_symmetric(lambda);
    double q = 0;
    for (Eigen::Index j = 2; j < e.size(); ++j) q -= e(j);
    return q;
}

struct NonlinearitySamples
{
    VectorXd q;
    std::vector<int> kahler_violations;
};

NonlinearitySamples ma_nonlinearity(const HermitianEigenField& field);

// For a fiber-constant Q with Delta_C phi = Q (Delta_C = 4 d^2/dz dzbar), returns the
// coefficient Q/4 of i dz dzbar in i ddbar phi. No solve is involved.
SpectralField base_part_identity(const SpectralField& q_avg);

struct DecayReport
{
    std::vector<double> radii;
    std::vector<double> norms;
    double exponent = 0;  // fitted beta in norm ~ r^{-beta}
    double r_squared = 1;
    std::pair<double, double> residual_band{0, 0};
};

DecayReport fit_decay_exponent(const std::vector<double>& radii, const std::vector<double>& norms);

// The i ddbar data carried between bootstrap steps: a potential on the zero-mean modes plus
// a fiber-constant correction added directly to d^2/dz dzbar.
struct BootstrapState
{
    SpectralField potential;
    SpectralField base_correction;

    BootstrapState(SpectralField phi) : potential(phi), base_correction(SpectralField(phi.basis(), phi.grid())) {}
    BootstrapState(SpectralField phi, SpectralField base) : potential(std::move(phi)), base_correction(std::move(base)) {}
};

struct BootstrapOptions
{
    double annulus_lo = 0;  // 0: 100 / beta_in
    double annulus_hi = 0;  // 0: 10 * annulus_lo
    int annulus_count = 6;
    int radial_samples = 5; // per annulus of width 2
    unsigned threads = 0;
};

struct BootstrapStep
{
    double beta_in = 0;
    DecayReport input;     // measured decay of i ddbar phi
    DecayReport q;         // decay of the nonlinearity
    DecayReport output;    // decay of i ddbar of the re-solved potential
    BootstrapState next;
};

// One pass of i ddbar phi = O(r^-b) => Q = O(r^-2b) => i ddbar phi_new = O(r^-2b).
// The re-solve uses the trace convention: Delta phi_new = e_1 = Q, i.e. real Laplacian 2Q.
BootstrapStep bootstrap_step(const BootstrapState& state, int d, double beta_in, const BootstrapOptions& options = {});

// phi = A r^{-beta} (cos 2 pi x1 + cos 2 pi x3) on the unit four-torus (d = 3), with A
// chosen so that |i ddbar phi| <= 0.2 at r_min. The basis is large enough for two steps.
SpectralField synthetic_bootstrap_field(double beta, double r_min, double r_max, int nodes = 512);

double energy_decay_exponent(double mu_c);

struct EnergySequence
{
    double r0 = 1;
    std::vector<double> values; // E(2^n r0)
    double mu_c = 0.5;
};

// E(2^n r0) with consecutive ratios drawn in [floor * mu_c, mu_c] (floor = 1: geometric).
EnergySequence generate_energy_sequence(double r0, double e0, double mu_c, int steps, double floor = 1.0,
                                        unsigned seed = 0);

struct EnergyCheck
{
    double beta0 = 0;
    double constant = 0;      // C = E(r0) r0^{beta0}
    double worst_ratio = 0;   // max_n E(2^n r0) 2^{n beta0} / E(r0)
    bool holds = true;        // E(r) <= C r^{-beta0} at every sample
};

EnergyCheck verify_energy_decay(const EnergySequence& seq);

} // namespace alg
