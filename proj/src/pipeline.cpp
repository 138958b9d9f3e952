#include "layerstokes/pipeline.hpp"

#include <cmath>
#include <random>

#include "layerstokes/threading.hpp"

namespace layerstokes {

namespace {

std::complex<double> ixi(double xi) { return {0.0, xi}; }

double field_norm2(const LayerField& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return s;
}

}  // namespace

void SpectralSolution::eval_mode(size_t midx, double x, int order, std::complex<double>* u_out,
                                 std::complex<double>* theta_out) const {
    const auto& m = modes[midx];
    const ModeEval e = eval_mode_solution(m.c, m.s, x, order);
    const int N = cfg.dim;
    for (int j = 0; j < N - 1; ++j) u_out[j] = eval_uj(m.uj[j], m.s, x, order);
    u_out[N - 1] = e.u_N;
    *theta_out = e.theta;
}

SolutionPair solve_boundary_only(const LayerField& h, const ResolventParameter& p,
                                 const LayerConfig& cfg, int threads, SolveMethod method) {
    cfg.validate();
    const LayerGrid& g = h.grid;
    g.validate();
    if (g.dim != cfg.dim || g.delta != cfg.delta)
        throw std::invalid_argument("solve_boundary_only: grid/config mismatch");
    if (h.components != g.dim)
        throw std::invalid_argument("solve_boundary_only: h must have dim components");
    if (!(p.gamma0 > 0.0)) throw std::domain_error("solve_boundary_only: gamma0 must be > 0");
    if (!sector_check(p)) throw std::domain_error("solve_boundary_only: off-sector lambda");

    const int N = g.dim;
    const SpectralField H = partial_fourier(h);

    SpectralSolution sp;
    sp.grid = g;
    sp.p = p;
    sp.cfg = cfg;
    const int n0 = g.nt(0), n1 = g.nt(1);
    sp.modes.resize(static_cast<size_t>(n0) * n1 - 1);

    // nonzero modes are independent; solve them in parallel
    std::exception_ptr first_error;
    std::mutex error_mutex;
    parallel_for(static_cast<size_t>(n0) * n1 - 1, threads, [&](size_t t) {
        const size_t flat = t + 1;  // skip (0, 0)
        const int i0 = static_cast<int>(flat) / n1;
        const int i1 = static_cast<int>(flat) % n1;
        try {
            SpectralSolutionMode m;
            m.i0 = i0;
            m.i1 = i1;
            double xi[2] = {g.freq(0, i0), g.freq(1, i1)};
            m.s = compute_mode_symbols(std::span<const double>(xi, static_cast<size_t>(N - 1)), p,
                                       cfg);
            BoundaryTraceMode tr;
            const int ktop = g.n_z - 1;
            std::complex<double> hj_top[2], hj_bot[2];
            for (int j = 0; j < N - 1; ++j) {
                hj_top[j] = H.at(j, i0, i1, ktop);
                hj_bot[j] = H.at(j, i0, i1, 0);
                tr.hd_top += ixi(xi[j]) * hj_top[j];
                tr.hd_bot += ixi(xi[j]) * hj_bot[j];
            }
            tr.hN_top = H.at(N - 1, i0, i1, ktop);
            tr.hN_bot = H.at(N - 1, i0, i1, 0);
            const Vec4<double> r = assemble_rhs(tr, m.s, cfg.mu);
            m.c = solve_coefficients(m.s, r, method);
            for (int j = 0; j < N - 1; ++j)
                m.uj.push_back(assemble_uj_mode(j, m.c, m.s, hj_top[j], hj_bot[j]));
            sp.modes[t] = std::move(m);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    });
    if (first_error) std::rethrow_exception(first_error);

    // zero mode
    {
        std::vector<std::complex<double>> hj_top(N - 1), hj_bot(N - 1);
        for (int j = 0; j < N - 1; ++j) {
            hj_top[j] = H.at(j, 0, 0, g.n_z - 1);
            hj_bot[j] = H.at(j, 0, 0, 0);
        }
        sp.zero = solve_zero_mode(p, cfg, hj_top, hj_bot, H.at(N - 1, 0, 0, g.n_z - 1),
                                  H.at(N - 1, 0, 0, 0));
    }

    // evaluate the bundles on the grid and transform back
    SpectralField U(g, N), TH(g, 1);
    for (const auto& m : sp.modes) {
        for (int k = 0; k < g.n_z; ++k) {
            const double x = g.z(k);
            const ModeEval e = eval_mode_solution(m.c, m.s, x);
            for (int j = 0; j < N - 1; ++j) U.at(j, m.i0, m.i1, k) = eval_uj(m.uj[j], m.s, x);
            U.at(N - 1, m.i0, m.i1, k) = e.u_N;
            TH.at(0, m.i0, m.i1, k) = e.theta;
        }
    }
    for (int k = 0; k < g.n_z; ++k) {
        const double x = g.z(k);
        for (int j = 0; j < N - 1; ++j) U.at(j, 0, 0, k) = sp.zero.uj(j, x);
        U.at(N - 1, 0, 0, k) = sp.zero.u_N;
        TH.at(0, 0, 0, k) = sp.zero.theta(x);
    }

    SolutionPair out;
    out.u = inverse_partial_fourier(U);
    out.theta = inverse_partial_fourier(TH);
    out.spectral = std::move(sp);
    return out;
}

SolutionPair solve_full(const DataBundle& d, const ResolventParameter& p, const LayerConfig& cfg,
                        int threads) {
    cfg.validate();
    const LayerGrid& g = d.f.grid;
    if (d.f.components != g.dim || d.g.components != 1 || d.h.components != g.dim)
        throw std::invalid_argument("solve_full: data component mismatch");

    const bool has_g = field_norm2(d.g) > 0.0;
    DivergenceSolution dv;
    if (has_g) dv = solve_divergence(d.g);

    const LayerField ftilde = reduce_f_tilde(d, p.lambda, cfg.mu);
    const PaddedField fE = extend_Ef(ftilde);
    const WholeSpaceSolution ws = solve_stokes_wholespace(fE, p.lambda, cfg.mu);
    const LayerField htilde = reduce_h_tilde(d, dv, ws, cfg.mu);

    SolutionPair w = solve_boundary_only(htilde, p, cfg, threads);

    SolutionPair out;
    out.u = w.u;
    out.u += ws.v;
    if (has_g) out.u += dv.v;
    out.theta = w.theta;
    out.theta += ws.pi;
    return out;
}

namespace {

// smooth manufactured profiles: p = x^2 (delta - x)^2 and its derivatives,
// Ip = int_0^x p
double prof_p(double x, double d) { return x * x * (d - x) * (d - x); }
double prof_dp(double x, double d) { return 2 * x * (d - x) * (d - x) - 2 * x * x * (d - x); }
double prof_d2p(double x, double d) { return 2 * (d - x) * (d - x) - 8 * x * (d - x) + 2 * x * x; }
double prof_Ip(double x, double d) {
    return d * d * x * x * x / 3.0 - d * x * x * x * x / 2.0 + x * x * x * x * x / 5.0;
}

}  // namespace

ManufacturedCase manufactured_case(ManufacturedKind kind, const LayerGrid& grid,
                                   const ResolventParameter& p, const LayerConfig& cfg,
                                   std::uint64_t seed) {
    grid.validate();
    cfg.validate();
    const int N = grid.dim;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto cgauss = [&]() { return std::complex<double>(gauss(rng), gauss(rng)); };

    ManufacturedCase mc;
    mc.data.f = LayerField(grid, N);
    mc.data.g = LayerField(grid, 1);
    mc.data.h = LayerField(grid, N);
    mc.exact.u = LayerField(grid, N);
    mc.exact.theta = LayerField(grid, 1);

    if (kind == ManufacturedKind::single_mode_boundary) {
        // random nonzero tangential mode
        std::uniform_int_distribution<int> pick0(1, grid.nt(0) / 2 - 1);
        const int i0 = pick0(rng);
        int i1 = 0;
        if (N == 3) {
            std::uniform_int_distribution<int> pick1(0, grid.nt(1) / 2 - 1);
            i1 = pick1(rng);
        }
        double xi[2] = {grid.freq(0, i0), grid.freq(1, i1)};
        const ModeSymbols s = compute_mode_symbols(
            std::span<const double>(xi, static_cast<size_t>(N - 1)), p, cfg);

        // random amplitudes, consistent traces via the forward boundary map
        Vec4<double> coef{cgauss(), cgauss(), cgauss(), cgauss()};
        const Mat4<double> L = build_matrix(s);
        Vec4<double> r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[i] += L[i][j] * coef[j];
        BoundaryTraceMode tr;
        tr.hd_top = cfg.mu * r[0];
        tr.hd_bot = -cfg.mu * r[1];
        tr.hN_top = cfg.mu * r[2] / s.A;
        tr.hN_bot = -cfg.mu * r[3] / s.A;

        ModeCoefficients c = solve_coefficients(s, r);  // fills dependent coefficients
        // tangential traces consistent with hd = i xi . h'
        std::complex<double> hj_top[2] = {0.0, 0.0}, hj_bot[2] = {0.0, 0.0};
        if (N == 2 || xi[1] == 0.0) {
            hj_top[0] = tr.hd_top / ixi(xi[0]);
            hj_bot[0] = tr.hd_bot / ixi(xi[0]);
            if (N == 3) {
                hj_top[1] = cgauss();
                hj_bot[1] = cgauss();
            }
        } else {
            hj_top[0] = cgauss();
            hj_bot[0] = cgauss();
            hj_top[1] = (tr.hd_top - ixi(xi[0]) * hj_top[0]) / ixi(xi[1]);
            hj_bot[1] = (tr.hd_bot - ixi(xi[0]) * hj_bot[0]) / ixi(xi[1]);
        }

        SpectralSolutionMode mode;
        mode.i0 = i0;
        mode.i1 = i1;
        mode.s = s;
        mode.c = c;
        for (int j = 0; j < N - 1; ++j)
            mode.uj.push_back(assemble_uj_mode(j, c, s, hj_top[j], hj_bot[j]));

        // materialize exact fields and the stress-blend h field
        SpectralField U(grid, N), TH(grid, 1), HF(grid, N);
        for (int k = 0; k < grid.n_z; ++k) {
            const double x = grid.z(k);
            const ModeEval e0 = eval_mode_solution(c, s, x);
            const ModeEval e1 = eval_mode_solution(c, s, x, 1);
            for (int j = 0; j < N - 1; ++j) U.at(j, i0, i1, k) = eval_uj(mode.uj[j], s, x);
            U.at(N - 1, i0, i1, k) = e0.u_N;
            TH.at(0, i0, i1, k) = e0.theta;
            const double nuN = cutoff_phi(x, grid.delta, CutoffKind::phi_delta) -
                               cutoff_phi(x, grid.delta, CutoffKind::phi_0);
            for (int j = 0; j < N - 1; ++j) {
                const std::complex<double> duj = eval_uj(mode.uj[j], s, x, 1);
                HF.at(j, i0, i1, k) = nuN * cfg.mu * (duj + ixi(xi[j]) * e0.u_N);
            }
            HF.at(N - 1, i0, i1, k) = nuN * (2.0 * cfg.mu * e1.u_N - e0.theta);
        }
        mc.exact.u = inverse_partial_fourier(U);
        mc.exact.theta = inverse_partial_fourier(TH);
        mc.data.h = inverse_partial_fourier(HF);

        SpectralSolution sp;
        sp.grid = grid;
        sp.p = p;
        sp.cfg = cfg;
        sp.modes.push_back(std::move(mode));
        // zero mode of the exact solution vanishes
        sp.zero.lambda = p.lambda;
        sp.zero.mu = cfg.mu;
        sp.zero.delta = cfg.delta;
        sp.zero.B = std::sqrt(p.lambda / cfg.mu);
        sp.zero.uj_amp.assign(static_cast<size_t>(N - 1), {0.0, 0.0});
        mc.exact.spectral = std::move(sp);
        return mc;
    }

    // smooth_full: trigonometric tangential profile with trace-compatible
    // normal profiles so the parity extensions stay jump-free:
    //   u_j = c_j sin(k.x') p(x),  u_N = cos(k.x') q(x),  theta = cos(k.x') e^{-x},
    //   q' = -(sum_j c_j k_j) p  (so g = div u = 0),  q(0) = 1/(lambda + mu|k|^2),
    //   c_j = -k_j e^{-delta} / (2 mu delta^2).
    const double d = grid.delta;
    double kvec[2] = {grid.freq(0, 1), 0.0};
    if (N == 3) kvec[1] = grid.freq(1, 1);
    double k2 = kvec[0] * kvec[0] + kvec[1] * kvec[1];
    double cs[2] = {0.0, 0.0};
    double ckdot = 0.0;
    for (int j = 0; j < N - 1; ++j) {
        cs[j] = -kvec[j] * std::exp(-d) / (2.0 * cfg.mu * d * d);
        ckdot += cs[j] * kvec[j];
    }
    const std::complex<double> q0 = 1.0 / (p.lambda + cfg.mu * k2);

    auto qq = [&](double x) { return q0 - ckdot * prof_Ip(x, d); };
    auto dqq = [&](double x) { return std::complex<double>(-ckdot * prof_p(x, d), 0.0); };
    auto d2qq = [&](double x) { return std::complex<double>(-ckdot * prof_dp(x, d), 0.0); };

    const int n0 = grid.nt(0), n1 = grid.nt(1);
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1) {
            const double xp = grid.period[0] * i0 / n0;
            const double yp = (N == 3) ? grid.period[1] * i1 / n1 : 0.0;
            const double ph = kvec[0] * xp + kvec[1] * yp;
            const double sn = std::sin(ph), cn = std::cos(ph);
            for (int k = 0; k < grid.n_z; ++k) {
                const double x = grid.z(k);
                const double nuN = cutoff_phi(x, d, CutoffKind::phi_delta) -
                                   cutoff_phi(x, d, CutoffKind::phi_0);
                const std::complex<double> qv = qq(x), dqv = dqq(x), d2qv = d2qq(x);
                const double ex = std::exp(-x);
                for (int j = 0; j < N - 1; ++j) {
                    mc.exact.u.at(j, i0, i1, k) = cs[j] * sn * prof_p(x, d);
                    mc.data.f.at(j, i0, i1, k) =
                        sn * ((p.lambda + cfg.mu * k2) * cs[j] * prof_p(x, d) -
                              cfg.mu * cs[j] * prof_d2p(x, d) - kvec[j] * ex);
                    mc.data.h.at(j, i0, i1, k) =
                        nuN * cfg.mu * sn * (cs[j] * prof_dp(x, d) - kvec[j] * qv);
                }
                mc.exact.u.at(N - 1, i0, i1, k) = cn * qv;
                mc.exact.theta.at(0, i0, i1, k) = cn * ex;
                mc.data.f.at(N - 1, i0, i1, k) =
                    cn * ((p.lambda + cfg.mu * k2) * qv - cfg.mu * d2qv - ex);
                mc.data.h.at(N - 1, i0, i1, k) = nuN * cn * (2.0 * cfg.mu * dqv - ex);
            }
        }
    return mc;
}

namespace {

// derivative fields of u and theta, exact from the bundle when present,
// otherwise spectral/FD8
struct DerivedFields {
    std::vector<LayerField> du;    // du[k] = d_k u (dim fields of dim comps)
    std::vector<LayerField> d2u;   // d2u[m*dim+n] = d_m d_n u
    LayerField dtheta;             // dim comps: d_j theta
    LayerField divu;               // scalar
};

LayerField bundle_field(const SpectralSolution& sp, bool of_theta, const std::array<int, 2>& ta,
                        int nord) {
    const LayerGrid& g = sp.grid;
    const int N = g.dim;
    const int comps = of_theta ? 1 : N;
    SpectralField F(g, comps);
    std::vector<std::complex<double>> ubuf(static_cast<size_t>(N));
    for (size_t mi = 0; mi < sp.modes.size(); ++mi) {
        const auto& m = sp.modes[mi];
        std::complex<double> tanfac(1.0, 0.0);
        for (int d = 0; d < N - 1; ++d)
            for (int a = 0; a < ta[d]; ++a) tanfac *= ixi(m.s.xi[d]);
        for (int k = 0; k < g.n_z; ++k) {
            std::complex<double> th;
            sp.eval_mode(mi, g.z(k), nord, ubuf.data(), &th);
            if (of_theta)
                F.at(0, m.i0, m.i1, k) = tanfac * th;
            else
                for (int c = 0; c < N; ++c) F.at(c, m.i0, m.i1, k) = tanfac * ubuf[c];
        }
    }
    // zero mode: tangential derivatives vanish
    if (ta[0] == 0 && ta[1] == 0) {
        for (int k = 0; k < g.n_z; ++k) {
            const double x = g.z(k);
            if (of_theta) {
                std::complex<double> v(0.0, 0.0);
                if (nord == 0) v = sp.zero.theta(x);
                if (nord == 1) v = sp.zero.theta_slope;
                F.at(0, 0, 0, k) = v;
            } else {
                for (int j = 0; j < N - 1; ++j) F.at(j, 0, 0, k) = sp.zero.uj(j, x, nord);
                F.at(N - 1, 0, 0, k) = (nord == 0) ? sp.zero.u_N : std::complex<double>(0.0, 0.0);
            }
        }
    }
    return inverse_partial_fourier(F);
}

DerivedFields derive_fields(const SolutionPair& sol) {
    const LayerGrid& g = sol.u.grid;
    const int N = g.dim;
    DerivedFields df;
    df.du.resize(static_cast<size_t>(N));
    df.d2u.resize(static_cast<size_t>(N) * N);
    auto tan_orders = [N](int m, int n) {
        std::array<int, 2> ta{0, 0};
        if (m < N - 1) ta[m] += 1;
        if (n >= 0 && n < N - 1) ta[n] += 1;
        return ta;
    };
    if (sol.spectral) {
        const auto& sp = *sol.spectral;
        for (int m = 0; m < N; ++m)
            df.du[m] = bundle_field(sp, false, tan_orders(m, -1), m == N - 1 ? 1 : 0);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) {
                const int nord = (m == N - 1 ? 1 : 0) + (n == N - 1 ? 1 : 0);
                df.d2u[m * N + n] = bundle_field(sp, false, tan_orders(m, n), nord);
            }
        df.dtheta = LayerField(g, N);
        for (int m = 0; m < N; ++m) {
            LayerField t = bundle_field(sp, true, tan_orders(m, -1), m == N - 1 ? 1 : 0);
            for (int i0 = 0; i0 < g.nt(0); ++i0)
                for (int i1 = 0; i1 < g.nt(1); ++i1)
                    for (int k = 0; k < g.n_z; ++k)
                        df.dtheta.at(m, i0, i1, k) = t.at(0, i0, i1, k);
        }
    } else {
        for (int m = 0; m < N; ++m) df.du[m] = spectral_derivatives(sol.u, 1, m);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n)
                df.d2u[m * N + n] =
                    (m == n) ? spectral_derivatives(sol.u, 2, m)
                             : spectral_derivatives(df.du[n], 1, m);
        df.dtheta = LayerField(g, N);
        for (int m = 0; m < N; ++m) {
            LayerField t = spectral_derivatives(sol.theta, 1, m);
            for (int i0 = 0; i0 < g.nt(0); ++i0)
                for (int i1 = 0; i1 < g.nt(1); ++i1)
                    for (int k = 0; k < g.n_z; ++k)
                        df.dtheta.at(m, i0, i1, k) = t.at(0, i0, i1, k);
        }
    }
    df.divu = LayerField(g, 1);
    for (int m = 0; m < N; ++m)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k)
                    df.divu.at(0, i0, i1, k) += df.du[m].at(m, i0, i1, k);
    return df;
}

}  // namespace

LayerField bundle_derivative_field(const SpectralSolution& sp, bool of_theta, int component,
                                   const std::array<int, 2>& tan_orders, int normal_order) {
    LayerField full = bundle_field(sp, of_theta, tan_orders, normal_order);
    if (of_theta || full.components == 1) return full;
    LayerField out(sp.grid, 1);
    for (int i0 = 0; i0 < sp.grid.nt(0); ++i0)
        for (int i1 = 0; i1 < sp.grid.nt(1); ++i1)
            for (int k = 0; k < sp.grid.n_z; ++k)
                out.at(0, i0, i1, k) = full.at(component, i0, i1, k);
    return out;
}

ResidualReport residual_full(const SolutionPair& sol, const DataBundle& d,
                             const ResolventParameter& p, const LayerConfig& cfg) {
    const LayerGrid& g = sol.u.grid;
    const int N = g.dim;
    const DerivedFields df = derive_fields(sol);

    // lambda u - Div S(u, theta) - f, with Div S_j = mu Delta u_j
    // + mu d_j div u - d_j theta
    LayerField interior(g, N);
    for (int j = 0; j < N; ++j)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k) {
                    std::complex<double> lap(0.0, 0.0);
                    for (int m = 0; m < N; ++m) lap += df.d2u[m * N + m].at(j, i0, i1, k);
                    std::complex<double> djdiv(0.0, 0.0);
                    for (int m = 0; m < N; ++m) djdiv += df.d2u[j * N + m].at(m, i0, i1, k);
                    interior.at(j, i0, i1, k) = p.lambda * sol.u.at(j, i0, i1, k) -
                                                cfg.mu * lap - cfg.mu * djdiv +
                                                df.dtheta.at(j, i0, i1, k) -
                                                d.f.at(j, i0, i1, k);
                }
    LayerField divres = df.divu;
    divres -= d.g;

    auto rel = [](double num, double den) { return den > 0.0 ? num / den : (num > 0.0 ? 1.0 : 0.0); };

    ResidualReport rep;
    {
        const double fn = lq_norm(d.f, 2.0);
        LayerField lu = sol.u;
        lu *= p.lambda;
        rep.interior = rel(lq_norm(interior, 2.0), std::max(fn, lq_norm(lu, 2.0)));
        rep.divergence = rel(lq_norm(divres, 2.0), std::max(lq_norm(d.g, 2.0), lq_norm(df.divu, 2.0)));
    }
    // stress traces: S(u,theta)nu vs h at each face
    for (Side side : {Side::top, Side::bottom}) {
        const int k = (side == Side::top) ? g.n_z - 1 : 0;
        const double nuN = (side == Side::top) ? 1.0 : -1.0;
        double num = 0.0, den = 0.0;
        for (int j = 0; j < N; ++j)
            for (int i0 = 0; i0 < g.nt(0); ++i0)
                for (int i1 = 0; i1 < g.nt(1); ++i1) {
                    std::complex<double> SjN =
                        cfg.mu * (df.du[N - 1].at(j, i0, i1, k) + df.du[j].at(N - 1, i0, i1, k));
                    if (j == N - 1) SjN -= sol.theta.at(0, i0, i1, k);
                    const std::complex<double> res = SjN * nuN - d.h.at(j, i0, i1, k);
                    num += std::norm(res);
                    den += std::norm(d.h.at(j, i0, i1, k));
                }
        const double v = rel(std::sqrt(num), std::sqrt(den));
        if (side == Side::top)
            rep.trace_top = v;
        else
            rep.trace_bottom = v;
    }
    return rep;
}

double resolvent_ratio(const SolutionPair& sol, const DataBundle& d, const ResolventParameter& p,
                       double q) {
    const LayerGrid& g = sol.u.grid;
    const int N = g.dim;
    for (const auto& v : d.g.values)
        if (v != std::complex<double>(0.0, 0.0))
            throw std::invalid_argument("resolvent_ratio: requires g = 0");

    const DerivedFields df = derive_fields(sol);
    const std::complex<double> sql = std::sqrt(p.lambda);

    // LHS: stacked (lambda u, lambda^{1/2} grad u, grad^2 u, grad theta)
    LayerField lhs(g, N + N * N + N * N * N + N);
    int c = 0;
    for (int j = 0; j < N; ++j, ++c)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k)
                    lhs.at(c, i0, i1, k) = p.lambda * sol.u.at(j, i0, i1, k);
    for (int m = 0; m < N; ++m)
        for (int j = 0; j < N; ++j, ++c)
            for (int i0 = 0; i0 < g.nt(0); ++i0)
                for (int i1 = 0; i1 < g.nt(1); ++i1)
                    for (int k = 0; k < g.n_z; ++k)
                        lhs.at(c, i0, i1, k) = sql * df.du[m].at(j, i0, i1, k);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            for (int j = 0; j < N; ++j, ++c)
                for (int i0 = 0; i0 < g.nt(0); ++i0)
                    for (int i1 = 0; i1 < g.nt(1); ++i1)
                        for (int k = 0; k < g.n_z; ++k)
                            lhs.at(c, i0, i1, k) = df.d2u[m * N + n].at(j, i0, i1, k);
    for (int m = 0; m < N; ++m, ++c)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k)
                    lhs.at(c, i0, i1, k) = df.dtheta.at(m, i0, i1, k);

    // RHS: ||f|| + ||(lambda^{1/2} h, grad h)||
    LayerField rhs(g, N + N * N);
    c = 0;
    for (int j = 0; j < N; ++j, ++c)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k)
                    rhs.at(c, i0, i1, k) = sql * d.h.at(j, i0, i1, k);
    for (int m = 0; m < N; ++m) {
        LayerField dh = spectral_derivatives(d.h, 1, m);
        for (int j = 0; j < N; ++j, ++c)
            for (int i0 = 0; i0 < g.nt(0); ++i0)
                for (int i1 = 0; i1 < g.nt(1); ++i1)
                    for (int k = 0; k < g.n_z; ++k)
                        rhs.at(c, i0, i1, k) = dh.at(j, i0, i1, k);
    }
    const double num = lq_norm(lhs, q);
    const double den = lq_norm(d.f, q) + lq_norm(rhs, q);
    if (num == 0.0 && den == 0.0) return 0.0;
    return num / den;
}

}  // namespace layerstokes
