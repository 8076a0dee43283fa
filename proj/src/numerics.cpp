#include "alg/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>

namespace alg {

namespace {

QuadratureRule build_gauss_legendre(int n)
{
    QuadratureRule rule{VectorXd(n), VectorXd(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes(i) = -x;
        rule.nodes(n - 1 - i) = x;
        rule.weights(i) = w;
        rule.weights(n - 1 - i) = w;
    }
    if (n % 2 == 1) rule.nodes(n / 2) = 0;
    return rule;
}

std::atomic<unsigned> g_workers{0};

} // namespace

const QuadratureRule& gauss_legendre(int n)
{
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit: need at least two paired samples");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("linear_fit: abscissae are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    fit.residual_min = fit.residual_max = y[0] - (fit.intercept + fit.slope * x[0]);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
        fit.residual_min = std::min(fit.residual_min, r);
        fit.residual_max = std::max(fit.residual_max, r);
    }
    fit.r_squared = syy > 0 ? 1 - ss_res / syy : 1.0;
    return fit;
}

double brent_root(const std::function<double(double)>& f, double a, double b, double xtol, int max_iter)
{
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) throw std::domain_error("brent_root: interval does not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) c = a, fc = fa, d = e = b - a;
        if (std::abs(fc) < std::abs(fb)) {
            a = b, b = c, c = a;
            fa = fb, fb = fc, fc = fa;
        }
        const double tol = 2 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2 * m * s;
                q = 1 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2 * m * q * (q - r) - (b - a) * (r - 1));
                q = (q - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q; else p = -p;
            if (2 * p < std::min(3 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

unsigned worker_count()
{
    const unsigned n = g_workers.load();
    if (n > 0) return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_count(unsigned n) { g_workers.store(n); }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body)
{
    if (threads == 0) threads = worker_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failure_index = n;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (i < failure_index) failure = std::current_exception(), failure_index = i;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace alg
