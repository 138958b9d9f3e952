#pragma once

#include <array>
#include <complex>
#include <span>
#include <stdexcept>

#include "layerstokes/complexmath.hpp"

namespace layerstokes {

/// Resolvent parameter lambda with its sector Sigma_{eps,gamma0}:
/// |arg lambda| <= pi - eps and |lambda| > gamma0.
struct ResolventParameter {
    cplx<double> lambda{1.0, 0.0};
    double epsilon = 0.25 * 3.14159265358979323846;
    double gamma0 = 0.0;
};

/// Physical constants of the layer 0 < x_N < delta.
struct LayerConfig {
    double mu = 1.0;     // viscosity, > 0
    double delta = 1.0;  // layer height, > 0
    int dim = 3;         // spatial dimension N in {2, 3}

    void validate() const {
        if (!(mu > 0.0)) throw std::invalid_argument("LayerConfig: mu must be > 0");
        if (!(delta > 0.0)) throw std::invalid_argument("LayerConfig: delta must be > 0");
        if (dim != 2 && dim != 3) throw std::invalid_argument("LayerConfig: dim must be 2 or 3");
    }
};

bool sector_check(const ResolventParameter& p);

/// Whether lambda = 0 is admissible: solver paths reject it, verification
/// scans evaluate the symbols at lambda = 0 with B = A.
enum class LambdaDomain { solver, scan };

/// All per-mode scalars for one tangential wavenumber xi'.
template <class R>
struct ModeSymbolsT {
    std::array<R, 2> xi{};  // xi' components (tan_dim of them)
    int tan_dim = 2;
    R A{};           // |xi'|
    cplx<R> B{};     // sqrt(lambda/mu + A^2), Re B > 0 off the cut
    R a{};           // e^{-A delta}
    cplx<R> b{};     // e^{-B delta}
    cplx<R> D0{}, D1{}, D2{}, D3{};
    cplx<R> M_delta{};  // divided-difference kernel at x = delta
    cplx<R> lambda{};
    R mu{}, delta{};
};
using ModeSymbols = ModeSymbolsT<double>;

namespace detail {

/// Switch threshold for the confluent branch of the divided-difference
/// kernel: |B-A| x below this uses the series form.
inline constexpr double kConfluentSwitch = 1e-5;

}  // namespace detail

/// M(x) = (e^{-Bx} - e^{-Ax}) / (B - A), evaluated through the stable form
/// -x e^{-Ax} (1 - e^{-z})/z with z = (B-A)x when the direct quotient would
/// cancel.  Continuous through the confluent limit -x e^{-Ax}.
template <class R>
cplx<R> mcal(R x, const ModeSymbolsT<R>& s) {
    const cplx<R> z = (s.B - s.A) * x;
    if (std::abs(z) >= R(detail::kConfluentSwitch)) {
        return (std::exp(-s.B * x) - std::exp(-R(1) * s.A * x)) / (s.B - s.A);
    }
    return -x * std::exp(-s.A * x) * one_minus_exp_over(z);
}

/// d^n/dx^n M(x) without forming 1/(B-A):
///   M^(n)(x) = (-B)^n M(x) + (-1)^n (sum_{k<n} B^k A^{n-1-k}) e^{-Ax}.
template <class R>
cplx<R> mcal_derivative(R x, const ModeSymbolsT<R>& s, int order) {
    if (order == 0) return mcal(x, s);
    cplx<R> bpow(1, 0);
    cplx<R> geom(0, 0);
    for (int k = 0; k < order; ++k) {
        geom += bpow * std::pow(s.A, R(order - 1 - k));
        bpow *= s.B;  // after loop: bpow = B^order
    }
    const R sign = (order % 2 == 0) ? R(1) : R(-1);
    return sign * (bpow * mcal(x, s) + geom * std::exp(-s.A * x));
}

/// Basis functions k_1 = e^{-Bx}, k_2 = e^{-Ax}, k_3 = B M(x).
template <class R>
cplx<R> basis_k(int i, R x, const ModeSymbolsT<R>& s) {
    switch (i) {
        case 1: return std::exp(-s.B * x);
        case 2: return std::exp(-s.A * x);
        case 3: return s.B * mcal(x, s);
        default: throw std::invalid_argument("basis_k: index must be 1, 2 or 3");
    }
}

/// Exact d^n/dx^n of basis_k, same confluent-stable branch as mcal.
template <class R>
cplx<R> basis_derivative(int i, int order, R x, const ModeSymbolsT<R>& s) {
    if (order < 0 || order > 3) throw std::invalid_argument("basis_derivative: order must be in [0,3]");
    auto ipow = [order](cplx<R> z) {
        cplx<R> r(1, 0);
        for (int n = 0; n < order; ++n) r *= z;
        return r;
    };
    switch (i) {
        case 1: return ipow(-s.B) * std::exp(-s.B * x);
        case 2: return ipow(cplx<R>(-s.A, 0)) * std::exp(-s.A * x);
        case 3: return s.B * mcal_derivative(x, s, order);
        default: throw std::invalid_argument("basis_derivative: index must be 1, 2 or 3");
    }
}

/// d_1(x) = delta - x (distance to the top face), d_2(x) = x.
inline double d_ell(int ell, double x, double delta) {
    if (ell == 1) return delta - x;
    if (ell == 2) return x;
    throw std::invalid_argument("d_ell: ell must be 1 or 2");
}

template <class R>
ModeSymbolsT<R> compute_mode_symbols(std::span<const R> xi, cplx<R> lambda, R mu, R delta,
                                     LambdaDomain dom = LambdaDomain::solver) {
    if (xi.size() < 1 || xi.size() > 2)
        throw std::invalid_argument("compute_mode_symbols: xi' must have 1 or 2 components");
    const bool lambda_zero = (lambda == cplx<R>(0, 0));
    if (lambda_zero && dom != LambdaDomain::scan)
        throw std::domain_error("compute_mode_symbols: off-sector lambda = 0 (scan-only input)");
    if (lambda.imag() == R(0) && lambda.real() < R(0))
        throw std::domain_error("compute_mode_symbols: off-sector lambda on (-inf, 0)");

    ModeSymbolsT<R> s;
    s.tan_dim = static_cast<int>(xi.size());
    R a2 = 0;
    for (int d = 0; d < s.tan_dim; ++d) {
        s.xi[d] = xi[d];
        a2 += xi[d] * xi[d];
    }
    s.A = std::sqrt(a2);
    s.lambda = lambda;
    s.mu = mu;
    s.delta = delta;
    // principal root has Re B > 0 off (-inf, 0]; lambda = 0 scans take B = A.
    s.B = lambda_zero ? cplx<R>(s.A, 0) : std::sqrt(lambda / mu + cplx<R>(a2, 0));
    s.a = std::exp(-s.A * delta);
    s.b = std::exp(-s.B * delta);
    const cplx<R> B = s.B;
    const R A = s.A;
    s.D0 = B * B + A * A;
    s.D1 = -B * B * B + A * B * B + R(3) * A * A * B + A * A * A;
    s.D2 = B * B * B - A * B * B + R(3) * A * A * B + A * A * A;
    s.D3 = B * B * B + A * B * B + R(3) * A * A * B - A * A * A;
    s.M_delta = mcal(delta, s);
    return s;
}

ModeSymbols compute_mode_symbols(std::span<const double> xi, const ResolventParameter& p,
                                 const LayerConfig& cfg, LambdaDomain dom = LambdaDomain::solver);

}  // namespace layerstokes
