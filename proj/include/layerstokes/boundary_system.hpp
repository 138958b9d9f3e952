#pragma once

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "layerstokes/symbols.hpp"

namespace layerstokes {

template <class R>
using Mat4 = std::array<std::array<cplx<R>, 4>, 4>;
template <class R>
using Vec4 = std::array<cplx<R>, 4>;

/// Boundary traces entering the per-mode system: hd = i xi'.h' and hN at
/// x_N = delta (top) and x_N = 0 (bottom).
struct BoundaryTraceMode {
    cplx<double> hd_top{}, hd_bot{};
    cplx<double> hN_top{}, hN_bot{};
};

/// Solved per-mode amplitudes.  The unknowns of the linear system are
/// (muN[0], betaN[0], muN[1], betaN[1]); mud, betad, gamma follow from
///   mud_l   = (-1)^l A muN_l,
///   betad_l = (-1)^l (muN_l + B betaN_l),
///   gamma_l = (-1)^{l-1} mu (B+A)/A muN_l      (l = 1, 2).
template <class R>
struct ModeCoefficientsT {
    std::array<cplx<R>, 2> muN{}, betaN{}, mud{}, betad{}, gamma{};
};
using ModeCoefficients = ModeCoefficientsT<double>;

/// The 4x4 boundary matrix.  Entries are polynomials in (A, B, a, D0, M(delta));
/// no division by (B - A) occurs.
template <class R>
Mat4<R> build_matrix(const ModeSymbolsT<R>& s) {
    const cplx<R> B = s.B;
    const R A = s.A;
    const R a = s.a;
    const cplx<R> D0 = s.D0;
    const cplx<R> M = s.M_delta;
    Mat4<R> L{};
    L[0][0] = -(B + A);
    L[0][1] = -D0;
    L[0][2] = -(B + A) * a - D0 * M;
    L[0][3] = -D0 * a - D0 * (B - A) * M;
    L[1][0] = L[0][2];
    L[1][1] = L[0][3];
    L[1][2] = L[0][0];
    L[1][3] = L[0][1];
    L[2][0] = -(B - A);
    L[2][1] = R(2) * A * B;
    L[2][2] = (B - A) * a - R(2) * A * B * M;
    L[2][3] = -R(2) * A * B * a - R(2) * A * B * (B - A) * M;
    L[3][0] = -(B - A) * a + R(2) * A * B * M;
    L[3][1] = R(2) * A * B * a + R(2) * A * B * (B - A) * M;
    L[3][2] = B - A;
    L[3][3] = -R(2) * A * B;
    return L;
}

/// The two cancellation-free determinant factors
///   l_pm = D3 (1 - e^{-(B+A)delta}) -/+ (B^4 + 2A^2B^2 + 4A^3B + A^4) M(delta),
/// with det L = l_plus * l_minus.
template <class R>
struct DetFactors {
    cplx<R> l_plus{}, l_minus{};
    cplx<R> det() const { return l_plus * l_minus; }
};

template <class R>
DetFactors<R> det_L_factors(const ModeSymbolsT<R>& s) {
    const cplx<R> B = s.B;
    const R A = s.A;
    const cplx<R> E = one_minus_exp_neg((B + A) * s.delta);
    const cplx<R> P = B * B * B * B + R(2) * A * A * B * B + R(4) * A * A * A * B + A * A * A * A;
    DetFactors<R> f;
    f.l_plus = s.D3 * E - P * s.M_delta;
    f.l_minus = s.D3 * E + P * s.M_delta;
    return f;
}

template <class R>
cplx<R> det_L_closed(const ModeSymbolsT<R>& s) {
    return det_L_factors(s).det();
}

/// The 16 cofactors of L in closed form, polynomials in (A, B, a, M(delta),
/// D0..D3).  The published list carries a misprint in the four entries
/// containing D1: the cubic there must read -B^3 + 3AB^2 + A^2B + A^3
/// (verified symbolically against the signed minors of build_matrix; the
/// adjugate identity L adj(L) = det(L) I fails otherwise).
template <class R>
Mat4<R> cofactors(const ModeSymbolsT<R>& s) {
    const cplx<R> B = s.B;
    const R A = s.A;
    const R a = s.a;
    const cplx<R> D0 = s.D0, D2 = s.D2, D3 = s.D3;
    const cplx<R> M = s.M_delta;
    const cplx<R> D1c = -B * B * B + R(3) * A * B * B + A * A * B + A * A * A;
    const R one_a2 = (R(1) - a) * (R(1) + a);
    const cplx<R> M2 = M * M;
    const cplx<R> BmA = B - A, BpA = B + A;
    const cplx<R> AB2 = R(2) * A * B;

    Mat4<R> C{};
    C[0][0] = -AB2 * D3 * one_a2 - R(16) * A * A * A * A * B * B * a * M - AB2 * (B * B - A * A) * D2 * M2;
    C[0][1] = -BmA * D3 * one_a2 - R(8) * A * A * A * B * BmA * a * M + AB2 * BpA * D2 * M2;
    C[0][2] = AB2 * D3 * a * one_a2 + R(4) * A * B * (D0 * D0 - BmA * D3 * a * a) * M - AB2 * BmA * BmA * D3 * a * M2;
    C[0][3] = BmA * D3 * a * one_a2 - (D0 * D1c + (B * B - R(4) * A * B + A * A) * D3 * a * a) * M + AB2 * BmA * D3 * a * M2;
    C[1][0] = C[0][2];
    C[1][1] = C[0][3];
    C[1][2] = C[0][0];
    C[1][3] = C[0][1];
    C[2][0] = -D0 * D3 * one_a2 + R(2) * D0 * D0 * D0 * a * M + (B * B - A * A) * D0 * D2 * M2;
    C[2][1] = BpA * D3 * one_a2 - R(2) * BpA * D0 * D0 * a * M - BpA * D0 * D2 * M2;
    C[2][2] = -D0 * D3 * a * one_a2 + R(2) * D0 * (R(4) * A * A * A * B + BmA * D3 * a * a) * M + BmA * BmA * D0 * D3 * a * M2;
    C[2][3] = BpA * D3 * a * one_a2 - R(2) * (A * A * D1c + B * B * D3 * a * a) * M - BmA * D0 * D3 * a * M2;
    C[3][0] = -C[2][2];
    C[3][1] = -C[2][3];
    C[3][2] = -C[2][0];
    C[3][3] = -C[2][1];
    return C;
}

/// Right-hand side r = (hd(delta), -hd(0), A hN(delta), -A hN(0)) / mu.
Vec4<double> assemble_rhs(const BoundaryTraceMode& t, const ModeSymbols& s, double mu);

enum class SolveMethod { cramer, direct };

/// In-place partial-pivot elimination; returns the determinant.
template <class R>
cplx<R> det_via_elimination(Mat4<R> L) {
    cplx<R> det(1, 0);
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(L[r][c]) > std::abs(L[piv][c])) piv = r;
        if (piv != c) {
            std::swap(L[piv], L[c]);
            det = -det;
        }
        if (L[c][c] == cplx<R>(0, 0)) return cplx<R>(0, 0);
        det *= L[c][c];
        for (int r = c + 1; r < 4; ++r) {
            const cplx<R> f = L[r][c] / L[c][c];
            for (int k = c; k < 4; ++k) L[r][k] -= f * L[c][k];
        }
    }
    return det;
}

template <class R>
Vec4<R> solve_via_elimination(Mat4<R> L, Vec4<R> r) {
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int row = c + 1; row < 4; ++row)
            if (std::abs(L[row][c]) > std::abs(L[piv][c])) piv = row;
        if (piv != c) {
            std::swap(L[piv], L[c]);
            std::swap(r[piv], r[c]);
        }
        if (L[c][c] == cplx<R>(0, 0)) throw std::domain_error("solve_via_elimination: singular matrix");
        for (int row = c + 1; row < 4; ++row) {
            const cplx<R> f = L[row][c] / L[c][c];
            for (int k = c; k < 4; ++k) L[row][k] -= f * L[c][k];
            r[row] -= f * r[c];
        }
    }
    Vec4<R> x{};
    for (int row = 3; row >= 0; --row) {
        cplx<R> acc = r[row];
        for (int k = row + 1; k < 4; ++k) acc -= L[row][k] * x[k];
        x[row] = acc / L[row][row];
    }
    return x;
}

/// Solve L (muN1, betaN1, muN2, betaN2) = r and fill the dependent
/// coefficients.  Requires A > 0 (the A = 0 mode is handled by
/// solve_zero_mode) and a nonvanishing determinant.
ModeCoefficients solve_coefficients(const ModeSymbols& s, const Vec4<double>& r,
                                    SolveMethod method = SolveMethod::cramer);

struct ModeEval {
    cplx<double> u_d{}, u_N{}, theta{};
};

/// Evaluate (u_d, u_N, theta) of one mode at normal position x (order 0) or
/// their exact d^order/dx^order (order 1..3).
ModeEval eval_mode_solution(const ModeCoefficients& c, const ModeSymbols& s, double x,
                            int order = 0);

/// Closed-form profile of the xi' = 0 mode, where the boundary matrix is
/// singular: u_N is constant, theta is affine in x_N, and each tangential
/// component solves a 1-D Neumann resolvent problem.
struct ZeroModeSolution {
    cplx<double> lambda{};
    double mu = 1.0, delta = 1.0;
    cplx<double> B{};                                   // sqrt(lambda/mu)
    cplx<double> u_N{};                                 // constant in x_N
    cplx<double> theta0{}, theta_slope{};               // theta = theta0 + slope x
    std::vector<std::array<cplx<double>, 2>> uj_amp;    // e^{-B d_l} amplitudes per component

    cplx<double> theta(double x) const { return theta0 + theta_slope * x; }
    cplx<double> uj(int j, double x, int order = 0) const;
};

ZeroModeSolution solve_zero_mode(const ResolventParameter& p, const LayerConfig& cfg,
                                 std::span<const cplx<double>> hj_top,
                                 std::span<const cplx<double>> hj_bot, cplx<double> hN_top,
                                 cplx<double> hN_bot);

}  // namespace layerstokes
