#pragma once

#include <array>
#include <complex>

#include "layerstokes/boundary_system.hpp"
#include "layerstokes/symbols.hpp"

namespace layerstokes {

/// Prescribed values of du/dx_N at the two faces.
struct NeumannFluxMode {
    cplx<double> F_top{}, F_bot{};
};

/// Solve (B^2 - d^2/dx^2) u = 0 on (0, delta) with du/dx = F at the faces.
/// Returns the amplitudes (b1, b2) of u = b1 e^{-B d_1(x)} + b2 e^{-B d_2(x)}:
///   b1 = (F_top - e^{-B delta} F_bot) / (B (1 - e^{-2 B delta})),
///   b2 = (e^{-B delta} F_top - F_bot) / (B (1 - e^{-2 B delta})).
/// Rejects lambda = 0 symbols, where 1 - e^{-2 B delta} loses its lower bound
/// as A -> 0.
std::array<cplx<double>, 2> solve_layer_neumann_mode(const NeumannFluxMode& f,
                                                     const ModeSymbols& s);
std::array<cplx<double>, 2> solve_layer_neumann_mode(const NeumannFluxMode& f, cplx<double> B,
                                                     double delta);

/// One tangential velocity mode: particular part -i xi_j theta / lambda
/// carried by e^{-A d_l} amplitudes p, homogeneous correction by e^{-B d_l}
/// amplitudes q.
struct UjMode {
    std::array<cplx<double>, 2> p{};  // e^{-A d_l} amplitudes
    std::array<cplx<double>, 2> q{};  // e^{-B d_l} amplitudes
};

cplx<double> eval_uj(const UjMode& m, const ModeSymbols& s, double x, int order = 0);

/// Particular solution of mu (B^2 - d^2) u_j = -i xi_j theta:
/// amplitudes -i xi_j gamma_l / lambda (valid since (B^2 - d^2) e^{-A d_l}
/// = (lambda/mu) e^{-A d_l}).
UjMode particular_uj_mode(int j, const ModeCoefficients& c, const ModeSymbols& s);

/// Full tangential mode: particular part plus the layer-Neumann correction
/// with flux F(x) = nu_N h_j / mu - i xi_j u_N - d/dx u_j^p at x in {0, delta}.
UjMode assemble_uj_mode(int j, const ModeCoefficients& c, const ModeSymbols& s,
                        cplx<double> hj_top, cplx<double> hj_bot, cplx<double> uN_top,
                        cplx<double> uN_bot);
UjMode assemble_uj_mode(int j, const ModeCoefficients& c, const ModeSymbols& s,
                        cplx<double> hj_top, cplx<double> hj_bot);

}  // namespace layerstokes

#include "layerstokes/field.hpp"

namespace layerstokes {

/// Whole-space Laplace resolvent: multiplier 1/(lambda + mu |xi|^2) over the
/// full padded-box FFT; restriction to the layer returned.
LayerField solve_laplace_wholespace(const PaddedField& f, cplx<double> lambda, double mu);

/// Validation route for the tangential components: u_{1j} solves the
/// whole-space resolvent with -E0 d_j theta, then a layer-Neumann correction
/// matches the flux mu^{-1} nu_N h_j - d_j u_N - d_N u_{1j}.
///
/// With corrected_quadrature (default) the zero extension is split into the
/// linear bridge through its trace values (exact Fourier coefficients) plus a
/// continuous sampled remainder, and the face fluxes of u_{1j} are extracted
/// by trapezoid convolution against the exact periodized kernel derivative;
/// both steps remove the O(h) error the face jumps of E0 d_j theta would
/// otherwise impose.  corrected_quadrature = false keeps the plain sampled
/// route (first-order, used to measure the padded-FFT rate).
LayerField tangential_via_extension(int j, const LayerField& theta, const LayerField& h_j,
                                    const LayerField& u_N, const ResolventParameter& p,
                                    double mu, bool corrected_quadrature = true);

}  // namespace layerstokes
