#include "alg/ansatz.hpp"

#include <stdexcept>

namespace alg {

SigmaSamples sigma_average(const SigmaSamples& in, int n, const std::vector<int>& fiber_perm)
{
    if (n < 2) throw std::invalid_argument("sigma average: order must be >= 2");
    if (in.n_radial < 1 || in.n_theta < 1 || in.n_fiber < 1 ||
        in.values.size() != static_cast<long>(in.n_radial) * in.n_theta * in.n_fiber)
        throw std::invalid_argument("sigma average: sample shape mismatch");
    if (in.n_theta % n != 0) throw std::invalid_argument("sigma average: angular grid is not closed under rotation");
    if (static_cast<int>(fiber_perm.size()) != in.n_fiber)
        throw std::invalid_argument("sigma average: fiber action has the wrong size");
    for (int j = 0; j < in.n_fiber; ++j) {
        if (fiber_perm[j] < 0 || fiber_perm[j] >= in.n_fiber)
            throw std::invalid_argument("sigma average: fiber action out of range");
        int k = j;
        for (int p = 0; p < n; ++p) k = fiber_perm[k];
        if (k != j) throw std::invalid_argument("sigma average: fiber action does not have order dividing n");
    }

    const int shift = in.n_theta / n;
    SigmaSamples out = in;
    std::vector<char> done(in.values.size(), 0);
    std::vector<long> orbit(n);
    auto index = [&](int i, int t, int j) { return (static_cast<long>(i) * in.n_theta + t) * in.n_fiber + j; };
    for (int i = 0; i < in.n_radial; ++i)
        for (int t = 0; t < in.n_theta; ++t)
            for (int j = 0; j < in.n_fiber; ++j) {
                const long q0 = index(i, t, j);
                if (done[q0]) continue;
                int tt = t, jj = j;
                for (int p = 0; p < n; ++p) {
                    orbit[p] = index(i, tt, jj);
                    tt = (tt + shift) % in.n_theta;
                    jj = fiber_perm[jj];
                }
                // first visited member is the smallest index, so the sum order is canonical
                bool equal = true;
                for (int p = 1; p < n; ++p) equal = equal && in.values(orbit[p]) == in.values(orbit[0]);
                cplx mean = in.values(orbit[0]);
                if (!equal) {
                    cplx acc = 0;
                    for (int p = 0; p < n; ++p) acc += in.values(orbit[p]);
                    mean = acc / double(n);
                }
                for (int p = 0; p < n; ++p) {
                    out.values(orbit[p]) = mean;
                    done[orbit[p]] = 1;
                }
            }
    return out;
}

} // namespace alg
