#pragma once

#include "alg/numerics.hpp"

#include <array>
#include <limits>
#include <vector>

namespace alg {

enum class CutoffKind { zero, trapezoid, smooth_mollified };

// Radial cutoff with support [a, e] and plateau [b, c] (c, e may be +infinity for a step up).
// The smooth kind joins the pieces with the C-infinity step S(x) = p(x) / (p(x) + p(1 - x)),
// p(x) = exp(-1/x): the Heaviside function convolved with the bump S'.
class CutoffProfile
{
public:
    static CutoffProfile zero();
    static CutoffProfile trapezoid(double a, double b, double c, double e);
    static CutoffProfile smooth(double a, double b, double c, double e);
    // The constraint bump: support [1, 4], plateau [2, 3].
    static CutoffProfile standard(CutoffKind kind);

    CutoffKind kind() const { return kind_; }
    const std::array<double, 4>& breakpoints() const { return bp_; }
    double support_lo() const { return bp_[0]; }
    double plateau_lo() const { return bp_[1]; }
    double plateau_hi() const { return bp_[2]; }
    double support_hi() const { return bp_[3]; }

    double value(double y) const { return jet(y)[0]; }
    // value, first and second derivative
    std::array<double, 3> jet(double y) const;

    // Samples on a uniform grid of n points over [0, max(support) + 1].
    std::vector<std::array<double, 2>> samples(int n) const;

private:
    CutoffKind kind_ = CutoffKind::zero;
    std::array<double, 4> bp_{0, 0, 0, 0};
};

// The smooth step and its first two derivatives.
std::array<double, 3> smooth_step(double x);

struct GammaEstimate
{
    double value = 0;
    double error = 0;
};

// Integral of chi(y) y over (0, infinity).
GammaEstimate cutoff_gamma(const CutoffProfile& chi);

// Integral of chi(y) w(y) y over (0, infinity), piecewise Gauss-Legendre between breakpoints.
double cutoff_moment(const CutoffProfile& chi, const std::function<double(double)>& w, int pieces = 16,
                     int points = 32);

} // namespace alg
