#pragma once

#include "alg/spectral_field.hpp"

#include <vector>

namespace alg {

struct SampleLocation
{
    double r = 0;
    double theta = 0;
    std::vector<double> y; // fiber point (may be empty for fiber-free data)
};

// Value, first derivatives and complex Hessian of a real function in the complex
// coordinates (z, w_1, ..., w_m) with z = r e^{i theta}.
struct PointJet
{
    cplx value = 0;
    VectorXcd d10;  // d/dz_a
    VectorXcd d01;  // d/dzbar_a
    MatrixXcd hess; // d^2 / dz_a dzbar_b
};

// Evaluates jets of a spectral field on a flat-torus fiber; radial derivatives by
// finite differences, angular and fiber derivatives exact.
class JetSynthesizer
{
public:
    // base_correction (optional, fiber-constant) is added to the d^2/dz dzbar entry only.
    explicit JetSynthesizer(const SpectralField& field, const SpectralField* base_correction = nullptr);

    int dimension() const { return 1 + basis_->complex_dimension(); }
    PointJet at(const SampleLocation& p) const;

private:
    struct Mode
    {
        int k;
        int ordinal;
        VectorXcd zeta;
        VectorXd xi;
        VectorXcd v, v1, v2;
    };
    std::shared_ptr<const FlatTorusBasis> basis_;
    GridPtr grid_;
    std::vector<Mode> modes_;
    std::vector<std::pair<int, VectorXcd>> base_;
};

// Eigenvalues (ascending) of a real (1,1)-form relative to the model form, per sample.
struct HermitianEigenField
{
    int d = 1;
    std::vector<SampleLocation> samples;
    MatrixXd eigenvalues; // samples x d

    int size() const { return static_cast<int>(eigenvalues.rows()); }
    // Indices of samples with some 1 + lambda <= 0.
    std::vector<int> kahler_violations() const;
};

// Eigenvalues relative to the model form (i/2) sum dz dzbar: those of 2 [d^2 phi / dz_a dzbar_b].
VectorXd relative_eigenvalues(const MatrixXcd& complex_hessian);

struct PositivityReport
{
    double min_eigenvalue = 0;
    int witness = -1;
    SampleLocation location;
};

// Minimum eigenvalue of the model form plus the perturbation over all samples.
PositivityReport positivity_check(const HermitianEigenField& field);

} // namespace alg
