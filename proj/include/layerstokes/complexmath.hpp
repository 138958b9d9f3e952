#pragma once

#include <cmath>
#include <complex>

namespace layerstokes {

template <class R>
using cplx = std::complex<R>;

/// (1 - e^{-z}) / z, continuous through z = 0.
/// Series branch below |z| = 1e-3 keeps full precision where the direct
/// quotient cancels.
template <class R>
cplx<R> one_minus_exp_over(cplx<R> z) {
    if (std::abs(z) >= R(1e-3)) {
        return (R(1) - std::exp(-z)) / z;
    }
    // sum_{n>=0} (-z)^n / (n+1)!
    cplx<R> term(1, 0);
    cplx<R> sum(1, 0);
    for (int n = 1; n <= 8; ++n) {
        term *= -z / R(n + 1);
        sum += term;
    }
    return sum;
}

/// 1 - e^{-z}, stable for small |z|.
template <class R>
cplx<R> one_minus_exp_neg(cplx<R> z) {
    if (std::abs(z) >= R(1e-3)) return R(1) - std::exp(-z);
    return z * one_minus_exp_over(z);
}

}  // namespace layerstokes
