#include "layerstokes/tangential.hpp"

#include <cmath>

#include "layerstokes/complexmath.hpp"

namespace layerstokes {

std::array<cplx<double>, 2> solve_layer_neumann_mode(const NeumannFluxMode& f, cplx<double> B,
                                                     double delta) {
    const cplx<double> b = std::exp(-B * delta);
    const cplx<double> den = B * (1.0 - b * b);
    if (std::abs(den) < 1e-300)
        throw std::domain_error("solve_layer_neumann_mode: vanishing denominator B(1 - e^{-2B delta})");
    return {(f.F_top - b * f.F_bot) / den, (b * f.F_top - f.F_bot) / den};
}

std::array<cplx<double>, 2> solve_layer_neumann_mode(const NeumannFluxMode& f,
                                                     const ModeSymbols& s) {
    if (s.lambda == cplx<double>(0, 0))
        throw std::domain_error("solve_layer_neumann_mode: lambda = 0 has no denominator bound");
    return solve_layer_neumann_mode(f, s.B, s.delta);
}

cplx<double> eval_uj(const UjMode& m, const ModeSymbols& s, double x, int order) {
    cplx<double> out(0, 0);
    for (int l = 0; l < 2; ++l) {
        const double d = d_ell(l + 1, x, s.delta);
        const double chain = (l == 0) ? -1.0 : 1.0;
        double f = 1.0;
        for (int n = 0; n < order; ++n) f *= chain;
        out += f * (m.p[l] * basis_derivative(2, order, d, s) +
                    m.q[l] * basis_derivative(1, order, d, s));
    }
    return out;
}

UjMode particular_uj_mode(int j, const ModeCoefficients& c, const ModeSymbols& s) {
    if (s.lambda == cplx<double>(0, 0))
        throw std::domain_error("particular_uj_mode: lambda must be nonzero");
    UjMode m;
    const cplx<double> ixj(0.0, s.xi[j]);
    m.p[0] = -ixj * c.gamma[0] / s.lambda;
    m.p[1] = -ixj * c.gamma[1] / s.lambda;
    return m;
}

UjMode assemble_uj_mode(int j, const ModeCoefficients& c, const ModeSymbols& s,
                        cplx<double> hj_top, cplx<double> hj_bot, cplx<double> uN_top,
                        cplx<double> uN_bot) {
    UjMode m = particular_uj_mode(j, c, s);
    // flux of the particular part at the faces
    auto dpart = [&](double x) {
        cplx<double> out(0, 0);
        for (int l = 0; l < 2; ++l) {
            const double d = d_ell(l + 1, x, s.delta);
            const double chain = (l == 0) ? -1.0 : 1.0;
            out += chain * m.p[l] * basis_derivative(2, 1, d, s);
        }
        return out;
    };
    const cplx<double> ixj(0.0, s.xi[j]);
    NeumannFluxMode f;
    f.F_top = hj_top / s.mu - ixj * uN_top - dpart(s.delta);
    f.F_bot = -hj_bot / s.mu - ixj * uN_bot - dpart(0.0);
    m.q = solve_layer_neumann_mode(f, s);
    return m;
}

UjMode assemble_uj_mode(int j, const ModeCoefficients& c, const ModeSymbols& s,
                        cplx<double> hj_top, cplx<double> hj_bot) {
    const cplx<double> uN_top = eval_mode_solution(c, s, s.delta).u_N;
    const cplx<double> uN_bot = eval_mode_solution(c, s, 0.0).u_N;
    return assemble_uj_mode(j, c, s, hj_top, hj_bot, uN_top, uN_bot);
}

}  // namespace layerstokes
