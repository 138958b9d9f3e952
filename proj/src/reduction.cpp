#include "layerstokes/reduction.hpp"

#include <cmath>

#include "layerstokes/fft.hpp"

namespace layerstokes {

namespace {

// forward/backward full transforms on the padded box with the quadrature
// weights of the declared convention
void padded_forward(PaddedField& p) {
    const LayerGrid& g = p.grid;
    const double w = (g.period[0] / g.nt(0)) * (g.dim == 3 ? g.period[1] / g.nt(1) : 1.0) *
                     (g.pad_period() / g.n_zpad());
    for (int c = 0; c < p.components; ++c) {
        auto* block = p.values.data() +
                      static_cast<size_t>(c) * g.tan_count() * g.n_zpad();
        fft::full(block, g.nt(0), g.nt(1), g.n_zpad(), true);
    }
    for (auto& v : p.values) v *= w;
}

void padded_backward(PaddedField& p) {
    const LayerGrid& g = p.grid;
    const double w = 1.0 / (g.period[0] * (g.dim == 3 ? g.period[1] : 1.0) * g.pad_period());
    for (int c = 0; c < p.components; ++c) {
        auto* block = p.values.data() +
                      static_cast<size_t>(c) * g.tan_count() * g.n_zpad();
        fft::full(block, g.nt(0), g.nt(1), g.n_zpad(), false);
    }
    for (auto& v : p.values) v *= w;
}

}  // namespace

LayerField stress_tensor(const LayerField& u, const LayerField& theta, double mu) {
    const LayerGrid& g = u.grid;
    const int N = g.dim;
    if (u.components != N) throw std::invalid_argument("stress_tensor: u must have N components");
    if (theta.components != 1) throw std::invalid_argument("stress_tensor: theta must be scalar");

    // d_k u_j for all pairs
    std::vector<LayerField> du(static_cast<size_t>(N));  // du[k] = d_k u (all components)
    for (int k = 0; k < N; ++k) du[k] = spectral_derivatives(u, 1, k);

    LayerField S(g, N * N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            const int cjk = j * N + k;
            for (int i0 = 0; i0 < g.nt(0); ++i0)
                for (int i1 = 0; i1 < g.nt(1); ++i1)
                    for (int kk = 0; kk < g.n_z; ++kk) {
                        std::complex<double> v =
                            mu * (du[k].at(j, i0, i1, kk) + du[j].at(k, i0, i1, kk));
                        if (j == k) v -= theta.at(0, i0, i1, kk);
                        S.at(cjk, i0, i1, kk) = v;
                    }
        }
    return S;
}

DivergenceSolution solve_divergence(const LayerField& gfield) {
    const LayerGrid& g = gfield.grid;
    if (gfield.components != 1) throw std::invalid_argument("solve_divergence: g must be scalar");
    const int N = g.dim;

    // g* = g_0^o + g_delta^o on the padded box
    PaddedField gstar = extend_odd_even(gfield, ExtendKind::odd_at_0);
    {
        PaddedField gd = extend_odd_even(gfield, ExtendKind::odd_at_delta);
        for (size_t i = 0; i < gstar.values.size(); ++i) gstar.values[i] += gd.values[i];
    }
    padded_forward(gstar);

    PaddedField v(g, N), grad(g, N * N);
    const int nzp = g.n_zpad();
    for (int i0 = 0; i0 < g.nt(0); ++i0)
        for (int i1 = 0; i1 < g.nt(1); ++i1)
            for (int m = 0; m < nzp; ++m) {
                double xi[3] = {g.freq(0, i0), 0.0, 0.0};
                if (N == 3) {
                    xi[1] = g.freq(1, i1);
                    xi[2] = g.freq_pad(m);
                } else {
                    xi[1] = g.freq_pad(m);
                }
                const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                const std::complex<double> gh = gstar.at(0, i0, i1, m);
                for (int J = 0; J < N; ++J) {
                    // -i xi_J / |xi|^2, zero at xi = 0 (the zero mode of g*
                    // vanishes analytically by oddness)
                    const std::complex<double> vj =
                        (xi2 > 0.0) ? std::complex<double>(0.0, -xi[J] / xi2) * gh
                                    : std::complex<double>(0.0, 0.0);
                    v.at(J, i0, i1, m) = vj;
                    for (int k = 0; k < N; ++k)
                        grad.at(J * N + k, i0, i1, m) = std::complex<double>(0.0, xi[k]) * vj;
                }
            }
    padded_backward(v);
    padded_backward(grad);

    DivergenceSolution out;
    out.v = restrict_to_layer(v, N);
    out.grad = restrict_to_layer(grad, N * N);
    return out;
}

WholeSpaceSolution solve_stokes_wholespace(const PaddedField& fE, std::complex<double> lambda,
                                           double mu) {
    if (lambda.imag() == 0.0 && lambda.real() <= 0.0)
        throw std::domain_error("solve_stokes_wholespace: off-sector lambda");
    const LayerGrid& g = fE.grid;
    const int N = g.dim;
    if (fE.components != N)
        throw std::invalid_argument("solve_stokes_wholespace: force must have N components");

    PaddedField fhat = fE;
    padded_forward(fhat);

    PaddedField v(g, N), pi(g, 1), gradv(g, N * N);
    const int nzp = g.n_zpad();
    for (int i0 = 0; i0 < g.nt(0); ++i0)
        for (int i1 = 0; i1 < g.nt(1); ++i1)
            for (int m = 0; m < nzp; ++m) {
                double xi[3] = {g.freq(0, i0), 0.0, 0.0};
                if (N == 3) {
                    xi[1] = g.freq(1, i1);
                    xi[2] = g.freq_pad(m);
                } else {
                    xi[1] = g.freq_pad(m);
                }
                const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                std::complex<double> fh[3];
                std::complex<double> xdotf(0.0, 0.0);
                for (int J = 0; J < N; ++J) {
                    fh[J] = fhat.at(J, i0, i1, m);
                    xdotf += xi[J] * fh[J];
                }
                std::complex<double> ph(0.0, 0.0);
                std::complex<double> vh[3];
                if (xi2 > 0.0) {
                    ph = std::complex<double>(0.0, -1.0) * xdotf / xi2;
                    for (int J = 0; J < N; ++J)
                        vh[J] = (fh[J] - xi[J] * xdotf / xi2) / (lambda + mu * xi2);
                } else {
                    for (int J = 0; J < N; ++J) vh[J] = fh[J] / lambda;
                }
                pi.at(0, i0, i1, m) = ph;
                for (int J = 0; J < N; ++J) {
                    v.at(J, i0, i1, m) = vh[J];
                    for (int k = 0; k < N; ++k)
                        gradv.at(J * N + k, i0, i1, m) = std::complex<double>(0.0, xi[k]) * vh[J];
                }
            }
    padded_backward(v);
    padded_backward(pi);
    padded_backward(gradv);

    WholeSpaceSolution out;
    out.v = restrict_to_layer(v, N);
    out.pi = restrict_to_layer(pi, 1);
    out.grad_v = restrict_to_layer(gradv, N * N);
    return out;
}

LayerField reduce_f_tilde(const DataBundle& d, std::complex<double> lambda, double mu) {
    const LayerGrid& g = d.f.grid;
    const int N = g.dim;
    LayerField ft = d.f;

    double gnorm = 0.0;
    for (const auto& v : d.g.values) gnorm += std::norm(v);
    if (gnorm == 0.0) return ft;  // V0 0 = 0

    // stress route for the correction: D(V0 g) formed from the padded-spectral
    // gradient of V0 g, its divergence taken spectrally on the same box
    // (these derivatives are exact per discrete mode; algebraically the
    // correction reduces to 2 mu grad g* restricted to the layer).
    PaddedField gstar = extend_odd_even(d.g, ExtendKind::odd_at_0);
    {
        PaddedField gd = extend_odd_even(d.g, ExtendKind::odd_at_delta);
        for (size_t i = 0; i < gstar.values.size(); ++i) gstar.values[i] += gd.values[i];
    }
    padded_forward(gstar);

    PaddedField v0(g, N), divD(g, N);
    const int nzp = g.n_zpad();
    for (int i0 = 0; i0 < g.nt(0); ++i0)
        for (int i1 = 0; i1 < g.nt(1); ++i1)
            for (int m = 0; m < nzp; ++m) {
                double xi[3] = {g.freq(0, i0), 0.0, 0.0};
                if (N == 3) {
                    xi[1] = g.freq(1, i1);
                    xi[2] = g.freq_pad(m);
                } else {
                    xi[1] = g.freq_pad(m);
                }
                const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                const std::complex<double> gh = gstar.at(0, i0, i1, m);
                for (int J = 0; J < N; ++J) {
                    std::complex<double> v0h =
                        (xi2 > 0.0) ? std::complex<double>(0.0, -xi[J] / xi2) * gh
                                    : std::complex<double>(0.0, 0.0);
                    v0.at(J, i0, i1, m) = v0h;
                    // Div(mu D(V0 g))_J: mu (Delta v0_J + d_J div v0); with the
                    // multiplier identities both terms equal i xi_J g*
                    divD.at(J, i0, i1, m) = 2.0 * mu * std::complex<double>(0.0, xi[J]) * gh;
                }
            }
    padded_backward(v0);
    padded_backward(divD);
    const LayerField v0r = restrict_to_layer(v0, N);
    const LayerField divDr = restrict_to_layer(divD, N);

    for (size_t i = 0; i < ft.values.size(); ++i)
        ft.values[i] += -lambda * v0r.values[i] + divDr.values[i];
    return ft;
}

LayerField reduce_h_tilde(const DataBundle& d, const DivergenceSolution& dv,
                          const WholeSpaceSolution& ws, double mu) {
    const LayerGrid& g = d.h.grid;
    const int N = g.dim;
    LayerField ht = d.h;
    const bool have_v0 = !dv.v.values.empty();
    for (int j = 0; j < N; ++j)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k) {
                    const double x = g.z(k);
                    const double nuN = cutoff_phi(x, g.delta, CutoffKind::phi_delta) -
                                       cutoff_phi(x, g.delta, CutoffKind::phi_0);
                    // S_{jN} of the whole-space pair
                    std::complex<double> SjN =
                        mu * (ws.grad_v.at(j * N + (N - 1), i0, i1, k) +
                              ws.grad_v.at((N - 1) * N + j, i0, i1, k));
                    if (j == N - 1) SjN -= ws.pi.at(0, i0, i1, k);
                    // mu D(V0 g)_{jN}
                    std::complex<double> DjN(0.0, 0.0);
                    if (have_v0)
                        DjN = mu * (dv.grad.at(j * N + (N - 1), i0, i1, k) +
                                    dv.grad.at((N - 1) * N + j, i0, i1, k));
                    ht.at(j, i0, i1, k) -= nuN * (SjN + DjN);
                }
    return ht;
}

}  // namespace layerstokes
