#include "alg/radial.hpp"

#include <algorithm>
#include <stdexcept>

namespace alg {

RadialGrid::RadialGrid(double r_min, double r_max, int node_count, Spacing spacing, int fd_order)
    : spacing_(spacing), fd_order_(fd_order)
{
    if (!(r_min >= 1)) throw std::invalid_argument("radial grid: r_min must be at least 1");
    if (!(r_max > r_min)) throw std::invalid_argument("radial grid: r_max must exceed r_min");
    if (node_count < 16) throw std::invalid_argument("radial grid: at least 16 nodes required");
    nodes_.resize(node_count);
    for (int i = 0; i < node_count; ++i) {
        const double t = double(i) / (node_count - 1);
        nodes_[i] = spacing == Spacing::log ? r_min * std::exp(t * std::log(r_max / r_min))
                                            : r_min + t * (r_max - r_min);
    }
    nodes_.front() = r_min;
    nodes_.back() = r_max;
    build_stencils();
}

RadialGrid::RadialGrid(std::vector<double> nodes, int fd_order) : nodes_(std::move(nodes)), fd_order_(fd_order)
{
    if (nodes_.size() < 16) throw std::invalid_argument("radial grid: at least 16 nodes required");
    if (!(nodes_.front() >= 1)) throw std::invalid_argument("radial grid: r_min must be at least 1");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (!(nodes_[i] > nodes_[i - 1])) throw std::invalid_argument("radial grid: nodes must increase strictly");
    spacing_ = Spacing::uniform;
    build_stencils();
}

void RadialGrid::build_stencils()
{
    if (fd_order_ < 2 || fd_order_ % 2 != 0) throw std::invalid_argument("radial grid: fd_order must be even and >= 2");
    const int width = fd_order_ + 1;
    if (size() < width) throw std::invalid_argument("radial grid: too coarse for the difference stencil");
    half_ = fd_order_ / 2;
    stencils_.resize(size());
    for (int i = 0; i < size(); ++i) {
        const int start = std::clamp(i - half_, 0, size() - width);
        std::span<const double> x(nodes_.data() + start, width);
        stencils_[i].start = start;
        stencils_[i].weights = fornberg_weights<double>(nodes_[i], x, 2);
    }
}

int RadialGrid::locate(double r) const
{
    if (r <= nodes_.front()) return 0;
    if (r >= nodes_.back()) return size() - 2;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
    return static_cast<int>(it - nodes_.begin()) - 1;
}

InterpolationStencil RadialGrid::interpolation(double r, int points) const
{
    const int panel = locate(r);
    const int start = std::clamp(panel - points / 2 + 1, 0, size() - points);
    std::span<const double> x(nodes_.data() + start, points);
    return {start, lagrange_weights<double>(r, x)};
}

RadialProfile::RadialProfile(ModeIndex m, GridPtr g, VectorXcd v) : mode(m), grid(std::move(g)), values(std::move(v))
{
    if (!grid) throw std::invalid_argument("radial profile: missing grid");
    if (values.size() != grid->size()) throw std::invalid_argument("radial profile: value count differs from node count");
    if (!values.allFinite()) throw std::invalid_argument("radial profile: non-finite samples");
}

RadialQuadrature::RadialQuadrature(const RadialGrid& grid, double a, double b, int points_per_panel)
{
    if (a < grid.r_min() * (1 - 1e-14) || b > grid.r_max() * (1 + 1e-14) || !(b >= a))
        throw std::out_of_range("radial quadrature: range outside grid");
    if (b == a) return;
    const auto& rule = gauss_legendre(points_per_panel);
    const int first = grid.locate(a);
    const int last = grid.locate(b);
    for (int p = first; p <= last; ++p) {
        const double lo = std::max(a, grid.node(p));
        const double hi = std::min(b, grid.node(p + 1));
        if (!(hi > lo)) continue;
        const auto mapped = map_rule(rule, lo, hi);
        const int start = std::clamp(p - 3, 0, grid.size() - 8);
        std::span<const double> x(grid.nodes().data() + start, 8);
        for (int q = 0; q < points_per_panel; ++q) {
            points_.push_back(mapped.nodes(q));
            weights_.push_back(mapped.weights(q));
            interp_.push_back({start, lagrange_weights<double>(mapped.nodes(q), x)});
        }
    }
}

} // namespace alg
