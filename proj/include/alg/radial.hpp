#pragma once

#include "alg/fiber_spectrum.hpp"
#include "alg/numerics.hpp"

#include <memory>
#include <vector>

namespace alg {

enum class Spacing { log, uniform };

struct NodeStencil
{
    int start = 0;
    MatrixXd weights; // rows: value, first, second derivative
};

struct InterpolationStencil
{
    int start = 0;
    VectorXd weights;
};

class RadialGrid
{
public:
    RadialGrid(double r_min, double r_max, int node_count, Spacing spacing = Spacing::log, int fd_order = 8);
    explicit RadialGrid(std::vector<double> nodes, int fd_order = 8);

    int size() const { return static_cast<int>(nodes_.size()); }
    double r_min() const { return nodes_.front(); }
    double r_max() const { return nodes_.back(); }
    double node(int i) const { return nodes_[i]; }
    const std::vector<double>& nodes() const { return nodes_; }
    Spacing spacing() const { return spacing_; }
    int fd_order() const { return fd_order_; }

    const NodeStencil& stencil(int i) const { return stencils_[i]; }
    // Nodes whose difference stencil is centered.
    bool is_interior(int i) const { return i >= half_ && i < size() - half_; }
    int interior_begin() const { return half_; }
    int interior_end() const { return size() - half_; }

    // Index i with node(i) <= r <= node(i+1).
    int locate(double r) const;
    InterpolationStencil interpolation(double r, int points = 8) const;

    template <typename Vec>
    Vec derivative(const Vec& values, int order) const
    {
        Vec out(size());
        for (int i = 0; i < size(); ++i) {
            const auto& s = stencils_[i];
            typename Vec::Scalar acc(0);
            for (int j = 0; j < s.weights.cols(); ++j) acc += s.weights(order, j) * values(s.start + j);
            out(i) = acc;
        }
        return out;
    }

    template <typename Vec>
    typename Vec::Scalar interpolate(const Vec& values, double r) const
    {
        const auto s = interpolation(r);
        typename Vec::Scalar acc(0);
        for (int j = 0; j < s.weights.size(); ++j) acc += s.weights(j) * values(s.start + j);
        return acc;
    }

    bool same_as(const RadialGrid& other) const { return nodes_ == other.nodes_ && fd_order_ == other.fd_order_; }

private:
    void build_stencils();

    std::vector<double> nodes_;
    Spacing spacing_ = Spacing::log;
    int fd_order_ = 8;
    int half_ = 4;
    std::vector<NodeStencil> stencils_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline GridPtr make_grid(double r_min, double r_max, int node_count, Spacing spacing = Spacing::log,
                         int fd_order = 8)
{
    return std::make_shared<const RadialGrid>(r_min, r_max, node_count, spacing, fd_order);
}

struct RadialProfile
{
    ModeIndex mode;
    GridPtr grid;
    VectorXcd values;

    RadialProfile() = default;
    RadialProfile(ModeIndex m, GridPtr g, VectorXcd v);
    RadialProfile(ModeIndex m, GridPtr g) : RadialProfile(m, g, VectorXcd::Zero(g->size())) {}
};

// Composite Gauss-Legendre rule for integrals over [a, b] of quantities sampled on
// the grid: points lie in each grid panel clipped to [a, b], values come from local
// Lagrange interpolation of the nodal samples.
class RadialQuadrature
{
public:
    RadialQuadrature(const RadialGrid& grid, double a, double b, int points_per_panel = 8);

    int size() const { return static_cast<int>(points_.size()); }
    double point(int q) const { return points_[q]; }
    double weight(int q) const { return weights_[q]; }

    template <typename Vec>
    typename Vec::Scalar sample(const Vec& values, int q) const
    {
        const auto& s = interp_[q];
        typename Vec::Scalar acc(0);
        for (int j = 0; j < s.weights.size(); ++j) acc += s.weights(j) * values(s.start + j);
        return acc;
    }

private:
    std::vector<double> points_;
    std::vector<double> weights_;
    std::vector<InterpolationStencil> interp_;
};

} // namespace alg
