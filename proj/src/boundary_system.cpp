#include "layerstokes/boundary_system.hpp"

#include <cmath>

#include "layerstokes/tangential.hpp"

namespace layerstokes {

Vec4<double> assemble_rhs(const BoundaryTraceMode& t, const ModeSymbols& s, double mu) {
    return {t.hd_top / mu, -t.hd_bot / mu, s.A * t.hN_top / mu, -s.A * t.hN_bot / mu};
}

ModeCoefficients solve_coefficients(const ModeSymbols& s, const Vec4<double>& r,
                                    SolveMethod method) {
    if (!(s.A > 0.0)) throw std::domain_error("solve_coefficients: degenerate mode (A = 0)");
    Vec4<double> x{};
    if (method == SolveMethod::cramer) {
        const cplx<double> det = det_L_closed(s);
        if (std::abs(det) < 1e-30) throw std::domain_error("solve_coefficients: degenerate mode (det below threshold)");
        const Mat4<double> C = cofactors(s);
        for (int j = 0; j < 4; ++j) {
            cplx<double> acc(0, 0);
            for (int k = 0; k < 4; ++k) acc += C[k][j] * r[k];
            x[j] = acc / det;
        }
    } else {
        x = solve_via_elimination(build_matrix(s), r);
    }
    ModeCoefficients c;
    c.muN = {x[0], x[2]};
    c.betaN = {x[1], x[3]};
    for (int l = 0; l < 2; ++l) {
        const double sgn = (l == 0) ? -1.0 : 1.0;  // (-1)^ell with ell = l+1
        c.mud[l] = sgn * s.A * c.muN[l];
        c.betad[l] = sgn * (c.muN[l] + s.B * c.betaN[l]);
        c.gamma[l] = -sgn * s.mu * (s.B + s.A) / s.A * c.muN[l];
    }
    return c;
}

ModeEval eval_mode_solution(const ModeCoefficients& c, const ModeSymbols& s, double x,
                            int order) {
    ModeEval e;
    for (int l = 0; l < 2; ++l) {
        const double d = d_ell(l + 1, x, s.delta);
        const double chain = (l == 0) ? -1.0 : 1.0;  // d/dx of d_ell
        double f = 1.0;
        for (int n = 0; n < order; ++n) f *= chain;
        const cplx<double> mder = mcal_derivative(d, s, order);
        const cplx<double> eBder = basis_derivative(1, order, d, s);
        const cplx<double> eAder = basis_derivative(2, order, d, s);
        e.u_d += f * (c.mud[l] * mder + c.betad[l] * eBder);
        e.u_N += f * (c.muN[l] * mder + c.betaN[l] * eBder);
        e.theta += f * c.gamma[l] * eAder;
    }
    return e;
}

cplx<double> ZeroModeSolution::uj(int j, double x, int order) const {
    const auto& amp = uj_amp.at(static_cast<size_t>(j));
    cplx<double> out(0, 0);
    for (int l = 0; l < 2; ++l) {
        const double d = (l == 0) ? delta - x : x;
        const double chain = (l == 0) ? -1.0 : 1.0;
        double f = 1.0;
        for (int n = 0; n < order; ++n) f *= chain * 1.0;
        cplx<double> bpow(1, 0);
        for (int n = 0; n < order; ++n) bpow *= -B;
        out += f * amp[l] * bpow * std::exp(-B * d);
    }
    return out;
}

ZeroModeSolution solve_zero_mode(const ResolventParameter& p, const LayerConfig& cfg,
                                 std::span<const cplx<double>> hj_top,
                                 std::span<const cplx<double>> hj_bot, cplx<double> hN_top,
                                 cplx<double> hN_bot) {
    cfg.validate();
    if (p.lambda == cplx<double>(0, 0))
        throw std::domain_error("solve_zero_mode: lambda = 0 is not solvable");
    if (!sector_check(p)) throw std::domain_error("solve_zero_mode: off-sector lambda");
    if (hj_top.size() != hj_bot.size() || static_cast<int>(hj_top.size()) != cfg.dim - 1)
        throw std::invalid_argument("solve_zero_mode: need dim-1 tangential trace pairs");

    ZeroModeSolution z;
    z.lambda = p.lambda;
    z.mu = cfg.mu;
    z.delta = cfg.delta;
    z.B = std::sqrt(p.lambda / cfg.mu);
    if (z.B.real() < 0.0) z.B = -z.B;

    // At xi' = 0 the divergence constraint forces d/dx u_N = 0, so u_N is a
    // constant and theta is affine with boundary values theta(delta) =
    // -hN_top, theta(0) = hN_bot and slope -lambda u_N.
    z.u_N = (hN_top + hN_bot) / (cfg.delta * p.lambda);
    z.theta0 = hN_bot;
    z.theta_slope = (-hN_top - hN_bot) / cfg.delta;

    // Each tangential component obeys the 1-D Neumann resolvent problem with
    // flux nu_N h_j / mu at the faces.
    for (int j = 0; j < cfg.dim - 1; ++j) {
        NeumannFluxMode f;
        f.F_top = hj_top[j] / cfg.mu;
        f.F_bot = -hj_bot[j] / cfg.mu;
        z.uj_amp.push_back(solve_layer_neumann_mode(f, z.B, cfg.delta));
    }
    return z;
}

}  // namespace layerstokes
