#include <cmath>
#include <vector>

#include "layerstokes/fft.hpp"
#include "layerstokes/fields_ops.hpp"
#include "layerstokes/tangential.hpp"

namespace layerstokes {

LayerField solve_laplace_wholespace(const PaddedField& f, cplx<double> lambda, double mu) {
    if (lambda.imag() == 0.0 && lambda.real() <= 0.0)
        throw std::domain_error("solve_laplace_wholespace: off-sector lambda");
    const LayerGrid& g = f.grid;
    PaddedField fh = f;
    const double wf = (g.period[0] / g.nt(0)) * (g.dim == 3 ? g.period[1] / g.nt(1) : 1.0) *
                      (g.pad_period() / g.n_zpad());
    const double wb = 1.0 / (g.period[0] * (g.dim == 3 ? g.period[1] : 1.0) * g.pad_period());
    for (int c = 0; c < f.components; ++c) {
        auto* block = fh.values.data() + static_cast<size_t>(c) * g.tan_count() * g.n_zpad();
        fft::full(block, g.nt(0), g.nt(1), g.n_zpad(), true);
    }
    for (int c = 0; c < f.components; ++c)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int m = 0; m < g.n_zpad(); ++m) {
                    double xi2 = g.freq(0, i0) * g.freq(0, i0) + g.freq_pad(m) * g.freq_pad(m);
                    if (g.dim == 3) xi2 += g.freq(1, i1) * g.freq(1, i1);
                    fh.at(c, i0, i1, m) *= wf * wb / (lambda + mu * xi2);
                }
    for (int c = 0; c < f.components; ++c) {
        auto* block = fh.values.data() + static_cast<size_t>(c) * g.tan_count() * g.n_zpad();
        fft::full(block, g.nt(0), g.nt(1), g.n_zpad(), false);
    }
    return restrict_to_layer(fh, f.components);
}

namespace {

// Exact forward coefficients (index convention: grid origin at t = -delta) of
// the linear bridge chi_[0,delta](t) (f0 (1 - t/delta) + fd t/delta).
cplx<double> bridge_coeff(cplx<double> f0, cplx<double> fd, double kap, double delta) {
    if (kap == 0.0) return (f0 + fd) * delta / 2.0;
    const cplx<double> ik(0.0, kap);
    const cplx<double> e = std::exp(-ik * delta);
    const cplx<double> I1 = 1.0 / ik - (1.0 - e) / (ik * ik * delta);
    const cplx<double> I2 = (1.0 - e) / (ik * ik * delta) - e / ik;
    return (f0 * I1 + fd * I2) * std::exp(cplx<double>(0.0, -kap * delta));
}

// derivative of the periodized kernel of (lambda + mu A^2 - mu d^2) with rate
// B: dG(t) = (-e^{-B t~} + e^{-B(L - t~)}) / (2 mu (1 - e^{-BL})), zero at the
// kink by one-sided averaging
cplx<double> dG_per(double t, cplx<double> B, double L, double mu, double h) {
    double tt = std::fmod(t, L);
    if (tt < 0.0) tt += L;
    if (tt < 0.25 * h || tt > L - 0.25 * h) return {0.0, 0.0};
    const cplx<double> den = 2.0 * mu * (1.0 - std::exp(-B * L));
    return (-std::exp(-B * tt) + std::exp(-B * (L - tt))) / den;
}

}  // namespace

LayerField tangential_via_extension(int j, const LayerField& theta, const LayerField& h_j,
                                    const LayerField& u_N, const ResolventParameter& p,
                                    double mu, bool corrected_quadrature) {
    const LayerGrid& g = theta.grid;
    if (!sector_check(p) || !(p.gamma0 > 0.0))
        throw std::domain_error("tangential_via_extension: off-sector lambda");
    const int nz = g.n_z, nzp = g.n_zpad(), org = g.pad_origin();
    const double h = g.dz(), L = g.pad_period(), d = g.delta;
    const cplx<double> lambda = p.lambda;

    const SpectralField TH = partial_fourier(theta);
    const SpectralField HJ = partial_fourier(h_j);
    const SpectralField UN = partial_fourier(u_N);

    SpectralField UJ(g, 1);
    std::vector<cplx<double>> prof(nzp), work(nzp);
    for (int i0 = 0; i0 < g.nt(0); ++i0)
        for (int i1 = 0; i1 < g.nt(1); ++i1) {
            const double xi = (j == 0) ? g.freq(0, i0) : g.freq(1, i1);
            double A2 = g.freq(0, i0) * g.freq(0, i0);
            if (g.dim == 3) A2 += g.freq(1, i1) * g.freq(1, i1);
            cplx<double> B = std::sqrt(lambda / mu + A2);
            if (B.real() < 0.0) B = -B;

            // ftilde = -E0 d_j theta as a padded profile
            const cplx<double> ixj(0.0, xi);
            std::fill(prof.begin(), prof.end(), cplx<double>(0.0, 0.0));
            for (int k = 0; k < nz; ++k) prof[org + k] = -ixj * TH.at(0, i0, i1, k);
            const cplx<double> f_bot = prof[org], f_top = prof[org + nz - 1];

            // interior solve: multiplier on the (optionally bridge-corrected)
            // coefficients
            std::copy(prof.begin(), prof.end(), work.begin());
            if (corrected_quadrature) {
                for (int k = 0; k < nz; ++k) {
                    const double t = g.z(k);
                    work[org + k] -= f_bot * (1.0 - t / d) + f_top * (t / d);
                }
            }
            fft::full(work.data(), 1, 1, nzp, true);
            for (int m = 0; m < nzp; ++m) {
                cplx<double> coeff = work[m] * (L / nzp);
                if (corrected_quadrature)
                    coeff += bridge_coeff(f_bot, f_top, g.freq_pad(m), d);
                work[m] = coeff / (lambda + mu * (A2 + g.freq_pad(m) * g.freq_pad(m)));
            }
            // face fluxes of u_{1j}
            cplx<double> du_top, du_bot;
            if (corrected_quadrature) {
                // trapezoid convolution with the exact kernel derivative;
                // half weights where the integrand jumps, plus the collocated
                // node terms (kernel and data jump at the same point)
                cplx<double> acc_b(0.0, 0.0), acc_t(0.0, 0.0);
                for (int m = 0; m < nzp; ++m) {
                    cplx<double> fw = prof[m];
                    if (m == org || m == org + nz - 1) fw *= 0.5;
                    if (fw == cplx<double>(0.0, 0.0)) continue;
                    const double y = g.zpad(m);
                    acc_b += dG_per(0.0 - y, B, L, mu, h) * fw;
                    acc_t += dG_per(d - y, B, L, mu, h) * fw;
                }
                du_bot = acc_b * h + h * f_bot / (4.0 * mu);
                du_top = acc_t * h - h * f_top / (4.0 * mu);
            }
            std::vector<cplx<double>> u1(work);
            fft::full(u1.data(), 1, 1, nzp, false);
            for (auto& v : u1) v /= L;
            if (!corrected_quadrature) {
                // spectral flux from the same coefficients
                for (int m = 0; m < nzp; ++m)
                    work[m] *= cplx<double>(0.0, g.freq_pad(m));
                fft::full(work.data(), 1, 1, nzp, false);
                du_bot = work[org] / L;
                du_top = work[org + nz - 1] / L;
            }

            // layer-Neumann fix for the remaining flux
            NeumannFluxMode fl;
            fl.F_top = HJ.at(0, i0, i1, nz - 1) / mu - ixj * UN.at(0, i0, i1, nz - 1) - du_top;
            fl.F_bot = -HJ.at(0, i0, i1, 0) / mu - ixj * UN.at(0, i0, i1, 0) - du_bot;
            const auto amp = solve_layer_neumann_mode(fl, B, d);
            for (int k = 0; k < nz; ++k) {
                const double x = g.z(k);
                UJ.at(0, i0, i1, k) = u1[org + k] + amp[0] * std::exp(-B * (d - x)) +
                                      amp[1] * std::exp(-B * x);
            }
        }
    return inverse_partial_fourier(UJ);
}

}  // namespace layerstokes
