#include "alg/fiber_spectrum.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace alg {

namespace {

bool same_eigenvalue(double a, double b)
{
    return std::abs(a - b) <= eigenvalue_grouping_tolerance * std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

int FiberSpectrum::mode_count() const
{
    int n = 0;
    for (const auto& e : eigenvalues) n += e.multiplicity;
    return n;
}

double FiberSpectrum::eigenvalue_of_ordinal(int ordinal) const
{
    if (ordinal < 0) throw std::out_of_range("eigenvalue_of_ordinal: negative ordinal");
    for (const auto& e : eigenvalues) {
        if (ordinal < e.multiplicity) return e.mu;
        ordinal -= e.multiplicity;
    }
    throw std::out_of_range("eigenvalue_of_ordinal: ordinal beyond spectrum");
}

double FiberSpectrum::smallest_positive() const
{
    for (const auto& e : eigenvalues)
        if (e.mu > 0) return e.mu;
    throw std::domain_error("fiber spectrum has no positive eigenvalue (missing spectral gap)");
}

FiberSpectrum make_spectrum(std::vector<EigenvalueEntry> entries, double volume, bool b1_zero)
{
    FiberSpectrum s;
    s.eigenvalues = std::move(entries);
    s.volume = volume;
    s.b1_zero = b1_zero;
    s.poincare_constant = 1 / s.smallest_positive();
    return s;
}

double smallest_positive_sqrt(const FiberSpectrum& spec) { return std::sqrt(spec.smallest_positive()); }

std::vector<std::string> validate(const FiberSpectrum& spec)
{
    std::vector<std::string> out;
    const auto& ev = spec.eigenvalues;
    if (ev.empty()) {
        out.push_back("spectrum is empty");
        return out;
    }
    for (std::size_t i = 1; i < ev.size(); ++i)
        if (!(ev[i].mu > ev[i - 1].mu)) {
            out.push_back("eigenvalues not strictly increasing at entry " + std::to_string(i));
            break;
        }
    if (ev.front().mu != 0) out.push_back("first eigenvalue is not 0: " + fmt17(ev.front().mu));
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (ev[i].multiplicity < 1) out.push_back("nonpositive multiplicity at entry " + std::to_string(i));
        if (ev[i].mu < 0) out.push_back("negative eigenvalue at entry " + std::to_string(i));
    }
    if (!(spec.volume > 0)) out.push_back("volume is not positive: " + fmt17(spec.volume));
    const auto positive = std::find_if(ev.begin(), ev.end(), [](const EigenvalueEntry& e) { return e.mu > 0; });
    if (positive == ev.end()) {
        out.push_back("no positive eigenvalue (missing spectral gap)");
    } else {
        double mu1 = positive->mu;
        for (const auto& e : ev)
            if (e.mu > 0) mu1 = std::min(mu1, e.mu);
        const double expected = 1 / mu1;
        if (std::abs(spec.poincare_constant - expected) > 1e-12 * expected)
            out.push_back("poincare_constant " + fmt17(spec.poincare_constant) + " differs from 1/mu_1 = " +
                          fmt17(expected));
    }
    return out;
}

bool is_valid_mode(const FiberSpectrum& spec, const ModeIndex& mode)
{
    if (mode.mu_ordinal < 0 || mode.mu_ordinal >= spec.mode_count()) return false;
    return same_eigenvalue(spec.eigenvalue_of_ordinal(mode.mu_ordinal), mode.mu) ||
           (mode.mu == 0 && spec.eigenvalue_of_ordinal(mode.mu_ordinal) == 0);
}

FlatTorusBasis::FlatTorusBasis(std::vector<double> side_lengths, double eigenvalue_cutoff)
    : sides_(std::move(side_lengths))
{
    if (sides_.empty()) throw std::invalid_argument("flat torus: side_lengths is empty");
    for (double l : sides_)
        if (!(l > 0)) throw std::invalid_argument("flat torus: side lengths must be positive");
    if (!(eigenvalue_cutoff > 0)) throw std::invalid_argument("flat torus: cutoff must be positive");

    const int n = dimension();
    std::vector<int> bound(n);
    double combos = 1;
    for (int a = 0; a < n; ++a) {
        bound[a] = static_cast<int>(std::floor(sides_[a] * std::sqrt(eigenvalue_cutoff) / (2 * pi))) + 1;
        combos *= 2.0 * bound[a] + 1;
    }
    if (combos > 5e7) throw std::invalid_argument("flat torus: cutoff too large for enumeration");

    struct Entry
    {
        double mu;
        std::vector<int> m;
    };
    std::vector<Entry> found;
    std::vector<int> m(n);
    for (int a = 0; a < n; ++a) m[a] = -bound[a];
    while (true) {
        double s = 0;
        for (int a = 0; a < n; ++a) s += (m[a] / sides_[a]) * (m[a] / sides_[a]);
        const double mu = 4 * pi * pi * s;
        if (mu <= eigenvalue_cutoff * (1 + eigenvalue_grouping_tolerance)) found.push_back({mu, m});
        int a = n - 1;
        while (a >= 0 && m[a] == bound[a]) m[a] = -bound[a], --a;
        if (a < 0) break;
        ++m[a];
    }
    std::stable_sort(found.begin(), found.end(), [](const Entry& x, const Entry& y) { return x.mu < y.mu; });
    std::vector<EigenvalueEntry> groups;
    std::size_t start = 0;
    while (start < found.size()) {
        std::size_t end = start + 1;
        while (end < found.size() && same_eigenvalue(found[end].mu, found[start].mu)) ++end;
        const double mu = found[start].mu;
        std::sort(found.begin() + start, found.begin() + end,
                  [](const Entry& x, const Entry& y) { return x.m < y.m; });
        for (std::size_t i = start; i < end; ++i) {
            lattice_.push_back(found[i].m);
            eigen_.push_back(mu);
        }
        groups.push_back({mu, static_cast<int>(end - start)});
        start = end;
    }
    if (groups.size() < 2) throw std::invalid_argument("flat torus: no positive eigenvalue below cutoff");
    const double vol = std::accumulate(sides_.begin(), sides_.end(), 1.0, std::multiplies<>());
    spectrum_ = make_spectrum(std::move(groups), vol);
}

int FlatTorusBasis::ordinal_of(const std::vector<int>& m) const
{
    if (static_cast<int>(m.size()) != dimension()) return -1;
    double s = 0;
    for (int a = 0; a < dimension(); ++a) s += (m[a] / sides_[a]) * (m[a] / sides_[a]);
    const double mu = 4 * pi * pi * s;
    auto lo = std::lower_bound(eigen_.begin(), eigen_.end(), mu * (1 - 4 * eigenvalue_grouping_tolerance));
    for (auto it = lo; it != eigen_.end() && same_eigenvalue(*it, mu); ++it) {
        const int ord = static_cast<int>(it - eigen_.begin());
        if (lattice_[ord] == m) return ord;
    }
    return -1;
}

int FlatTorusBasis::conjugate_ordinal(int ordinal) const
{
    std::vector<int> m = lattice_.at(ordinal);
    for (int& v : m) v = -v;
    return ordinal_of(m);
}

double FlatTorusBasis::eigenvalue(int ordinal) const { return eigen_.at(ordinal); }

VectorXd FlatTorusBasis::wavevector(int ordinal) const
{
    const auto& m = lattice_.at(ordinal);
    VectorXd xi(dimension());
    for (int a = 0; a < dimension(); ++a) xi(a) = 2 * pi * m[a] / sides_[a];
    return xi;
}

VectorXcd FlatTorusBasis::holomorphic_wavevector(int ordinal) const
{
    if (dimension() % 2 != 0) throw std::logic_error("flat torus: odd real dimension has no complex structure");
    const VectorXd xi = wavevector(ordinal);
    VectorXcd z(complex_dimension());
    for (int a = 0; a < complex_dimension(); ++a) z(a) = cplx(xi(2 * a), -xi(2 * a + 1)) / 2.0;
    return z;
}

cplx FlatTorusBasis::evaluate(int ordinal, std::span<const double> x) const
{
    const VectorXd xi = wavevector(ordinal);
    double phase = 0;
    for (int a = 0; a < dimension(); ++a) phase += xi(a) * x[a];
    return std::polar(1 / std::sqrt(volume()), phase);
}

FiberSpectrum build_flat_torus_spectrum(const std::vector<double>& side_lengths, double eigenvalue_cutoff)
{
    return FlatTorusBasis(side_lengths, eigenvalue_cutoff).spectrum();
}

} // namespace alg
