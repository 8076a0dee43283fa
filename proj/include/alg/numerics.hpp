#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace alg {

using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

struct QuadratureRule
{
    VectorXd nodes;
    VectorXd weights;
};

// Gauss-Legendre rule on [-1, 1].
const QuadratureRule& gauss_legendre(int n);

// Maps a rule on [-1, 1] onto [a, b].
inline QuadratureRule map_rule(const QuadratureRule& rule, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    return {(mid + half * rule.nodes.array()).matrix(), (half * rule.weights.array()).matrix()};
}

// Finite-difference weights for derivatives 0..max_order at x0 on arbitrary nodes
// (Fornberg's recursion). Row m holds the weights of the m-th derivative.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
fornberg_weights(Scalar x0, std::span<const Scalar> x, int max_order)
{
    const int n = static_cast<int>(x.size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(max_order + 1, n);
    Scalar c1 = 1;
    Scalar c4 = x[0] - x0;
    c(0, 0) = 1;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        Scalar c2 = 1;
        const Scalar c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const Scalar c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c(k, i) = c1 * (Scalar(k) * c(k - 1, i - 1) - c5 * c(k, i - 1)) / c2;
                c(0, i) = -c1 * c5 * c(0, i - 1) / c2;
            }
            for (int k = mn; k >= 1; --k)
                c(k, j) = (c4 * c(k, j) - Scalar(k) * c(k - 1, j)) / c3;
            c(0, j) = c4 * c(0, j) / c3;
        }
        c1 = c2;
    }
    return c;
}

// Lagrange interpolation weights at x for the given nodes.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lagrange_weights(Scalar x, std::span<const Scalar> nodes)
{
    const int n = static_cast<int>(nodes.size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(n);
    for (int j = 0; j < n; ++j) {
        Scalar p = 1;
        for (int m = 0; m < n; ++m)
            if (m != j) p *= (x - nodes[m]) / (nodes[j] - nodes[m]);
        w(j) = p;
    }
    return w;
}

// Elementary symmetric polynomials e_0..e_d of the entries of lambda.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
elementary_symmetric(const Eigen::MatrixBase<Derived>& lambda)
{
    using Scalar = typename Derived::Scalar;
    const Eigen::Index d = lambda.size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(d + 1);
    e(0) = 1;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j >= 1; --j) e(j) += lambda(i) * e(j - 1);
    return e;
}

struct LinearFit
{
    double slope = 0;
    double intercept = 0;
    double r_squared = 1;
    double residual_min = 0;
    double residual_max = 0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Root of f on a bracketing interval [a, b] (Brent's method).
double brent_root(const std::function<double(double)>& f, double a, double b, double xtol = 1e-15,
                  int max_iter = 200);

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is handled
// by exactly one worker, so writes into per-index slots are schedule independent.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

// Global worker count used by internal sweeps (0 means hardware concurrency).
unsigned worker_count();
void set_worker_count(unsigned n);

} // namespace alg
