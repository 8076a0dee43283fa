#pragma once

namespace alg {

// Exponentially scaled modified Bessel functions of integer order:
// scaled_bessel_i(k, x) = exp(-x) I_k(x), scaled_bessel_k(k, x) = exp(x) K_k(x), x > 0.
double scaled_bessel_i(int k, double x);
double scaled_bessel_k(int k, double x);

struct ScaledBesselPair
{
    double i, di; // exp(-x) I_k, exp(-x) I_k'
    double k, dk; // exp(x) K_k,  exp(x) K_k'
};

ScaledBesselPair scaled_bessel_pair(int k, double x);

// x (I_k K_k' - I_k' K_k); equals -1 for exact functions.
double bessel_wronskian_defect(int k, double x);

inline constexpr int max_bessel_order = 32;

} // namespace alg
