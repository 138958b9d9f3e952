#include "layerstokes/fields_ops.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "layerstokes/fft.hpp"

namespace layerstokes {

namespace {

double blend_s(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double e1 = std::exp(-1.0 / t);
    const double e2 = std::exp(-1.0 / (1.0 - t));
    return e1 / (e1 + e2);
}

}  // namespace

SpectralField partial_fourier(const LayerField& f) {
    SpectralField F(f.grid, f.components);
    F.values = f.values;
    const int n0 = f.grid.nt(0), n1 = f.grid.nt(1), nz = f.grid.n_z;
    const double w = (f.grid.period[0] / n0) * (f.grid.dim == 3 ? f.grid.period[1] / n1 : 1.0);
    for (int c = 0; c < f.components; ++c) {
        auto* block = F.values.data() + static_cast<size_t>(c) * f.comp_size();
        fft::tangential(block, n0, n1, nz, true);
    }
    for (auto& v : F.values) v *= w;
    return F;
}

LayerField inverse_partial_fourier(const SpectralField& F) {
    LayerField f(F.grid, F.components);
    f.values = F.values;
    const int n0 = F.grid.nt(0), n1 = F.grid.nt(1), nz = F.grid.n_z;
    const double w = 1.0 / (F.grid.period[0] * (F.grid.dim == 3 ? F.grid.period[1] : 1.0));
    for (int c = 0; c < F.components; ++c) {
        auto* block = f.values.data() + f.idx(c, 0, 0, 0);
        fft::tangential(block, n0, n1, nz, false);
    }
    for (auto& v : f.values) v *= w;
    return f;
}

double cutoff_phi(double x, double delta, CutoffKind which) {
    const double t = std::abs(x) / delta;
    const double pd = blend_s(3.0 * t - 1.0);
    return which == CutoffKind::phi_delta ? pd : 1.0 - pd;
}

namespace {

// Padded-grid sample of one cut-off reflection piece.  `t` is the padded
// coordinate; values at reflected points are exact closed-grid samples,
// since the padded grid shares the spacing delta/(n_z-1).
std::complex<double> extension_sample(const LayerField& f, int c, int i0, int i1, double t,
                                      ExtendKind kind) {
    const LayerGrid& g = f.grid;
    const double d = g.delta;
    const double h = g.dz();
    auto sample = [&](double x) -> std::complex<double> {
        const int k = static_cast<int>(std::llround(x / h));
        if (k < 0 || k >= g.n_z) return {0.0, 0.0};
        return f.at(c, i0, i1, k);
    };
    const double eps = 0.5 * h;
    switch (kind) {
        case ExtendKind::odd_at_0:
            if (t > eps) return (t <= d + eps) ? cutoff_phi(t, d, CutoffKind::phi_0) * sample(t)
                                               : std::complex<double>{};
            if (t < -eps)
                return (-t <= d + eps) ? -cutoff_phi(-t, d, CutoffKind::phi_0) * sample(-t)
                                       : std::complex<double>{};
            return {0.0, 0.0};  // antisymmetry pins the reflection point
        case ExtendKind::even_at_0:
            if (t > eps) return (t <= d + eps) ? cutoff_phi(t, d, CutoffKind::phi_0) * sample(t)
                                               : std::complex<double>{};
            if (t < -eps)
                return (-t <= d + eps) ? cutoff_phi(-t, d, CutoffKind::phi_0) * sample(-t)
                                       : std::complex<double>{};
            return sample(0.0);
        case ExtendKind::odd_at_delta:
            if (t < d - eps)
                return (t >= -eps) ? cutoff_phi(t, d, CutoffKind::phi_delta) * sample(t)
                                   : std::complex<double>{};
            if (t > d + eps) {
                const double r = 2.0 * d - t;
                return (r >= -eps) ? -cutoff_phi(r, d, CutoffKind::phi_delta) * sample(r)
                                   : std::complex<double>{};
            }
            return {0.0, 0.0};
        case ExtendKind::even_at_delta:
            if (t < d - eps)
                return (t >= -eps) ? cutoff_phi(t, d, CutoffKind::phi_delta) * sample(t)
                                   : std::complex<double>{};
            if (t > d + eps) {
                const double r = 2.0 * d - t;
                return (r >= -eps) ? cutoff_phi(r, d, CutoffKind::phi_delta) * sample(r)
                                   : std::complex<double>{};
            }
            return sample(d);
    }
    return {0.0, 0.0};
}

}  // namespace

PaddedField extend_odd_even(const LayerField& f, ExtendKind kind) {
    const LayerGrid& g = f.grid;
    PaddedField out(g, f.components);
    for (int c = 0; c < f.components; ++c)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int m = 0; m < g.n_zpad(); ++m)
                    out.at(c, i0, i1, m) = extension_sample(f, c, i0, i1, g.zpad(m), kind);
    return out;
}

PaddedField extend_E0(const LayerField& f) {
    const LayerGrid& g = f.grid;
    PaddedField out(g, f.components);
    for (int c = 0; c < f.components; ++c)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k)
                    out.at(c, i0, i1, g.pad_origin() + k) = f.at(c, i0, i1, k);
    return out;
}

PaddedField extend_Ef(const LayerField& f) {
    const LayerGrid& g = f.grid;
    if (f.components != g.dim)
        throw std::invalid_argument("extend_Ef: field must have dim components");
    PaddedField out(g, f.components);
    for (int c = 0; c < f.components; ++c) {
        const bool normal_comp = (c == g.dim - 1);
        const ExtendKind k0 = normal_comp ? ExtendKind::odd_at_0 : ExtendKind::even_at_0;
        const ExtendKind kd = normal_comp ? ExtendKind::even_at_delta : ExtendKind::odd_at_delta;
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int m = 0; m < g.n_zpad(); ++m)
                    out.at(c, i0, i1, m) = extension_sample(f, c, i0, i1, g.zpad(m), k0) +
                                           extension_sample(f, c, i0, i1, g.zpad(m), kd);
    }
    return out;
}

LayerField restrict_to_layer(const PaddedField& p, int components) {
    LayerField out(p.grid, components);
    const int o = p.grid.pad_origin();
    for (int c = 0; c < components; ++c)
        for (int i0 = 0; i0 < p.grid.nt(0); ++i0)
            for (int i1 = 0; i1 < p.grid.nt(1); ++i1)
                for (int k = 0; k < p.grid.n_z; ++k)
                    out.at(c, i0, i1, k) = p.at(c, i0, i1, o + k);
    return out;
}

std::vector<std::complex<double>> boundary_trace(const LayerField& f, Side side) {
    const int k = (side == Side::top) ? f.grid.n_z - 1 : 0;
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<size_t>(f.components) * f.grid.tan_count());
    for (int c = 0; c < f.components; ++c)
        for (int i0 = 0; i0 < f.grid.nt(0); ++i0)
            for (int i1 = 0; i1 < f.grid.nt(1); ++i1) out.push_back(f.at(c, i0, i1, k));
    return out;
}

std::vector<std::complex<double>> boundary_trace(const SpectralField& f, Side side) {
    const int k = (side == Side::top) ? f.grid.n_z - 1 : 0;
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<size_t>(f.components) * f.grid.tan_count());
    for (int c = 0; c < f.components; ++c)
        for (int i0 = 0; i0 < f.grid.nt(0); ++i0)
            for (int i1 = 0; i1 < f.grid.nt(1); ++i1) out.push_back(f.at(c, i0, i1, k));
    return out;
}

std::vector<double> fd_weights(double z, std::span<const double> nodes, int m) {
    // Fornberg's recursion.
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

namespace {

// 9-point stencil weights for the whole normal grid: row k holds the weights
// applied to samples [base_k .. base_k+8].
struct NormalStencil {
    std::vector<std::array<double, 9>> w;
    std::vector<int> base;
};

NormalStencil normal_stencil(const LayerGrid& g, int order) {
    const int nz = g.n_z;
    const int half = 4;
    NormalStencil st;
    st.w.resize(nz);
    st.base.resize(nz);
    std::vector<double> nodes(9);
    for (int k = 0; k < nz; ++k) {
        int b = k - half;
        if (b < 0) b = 0;
        if (b > nz - 9) b = nz - 9;
        st.base[k] = b;
        for (int i = 0; i < 9; ++i) nodes[i] = g.z(b + i);
        auto w = fd_weights(g.z(k), nodes, order);
        for (int i = 0; i < 9; ++i) st.w[k][i] = w[i];
    }
    return st;
}

}  // namespace

LayerField spectral_derivatives(const LayerField& f, int order, int direction) {
    const LayerGrid& g = f.grid;
    if (order < 1 || order > 2) throw std::invalid_argument("spectral_derivatives: order must be 1 or 2");
    if (direction < 0 || direction >= g.dim)
        throw std::invalid_argument("spectral_derivatives: direction out of range");

    if (direction < g.dim - 1) {
        SpectralField F = partial_fourier(f);
        for (int c = 0; c < f.components; ++c)
            for (int i0 = 0; i0 < g.nt(0); ++i0)
                for (int i1 = 0; i1 < g.nt(1); ++i1) {
                    const double xi = g.freq(direction, direction == 0 ? i0 : i1);
                    std::complex<double> m(0.0, xi);
                    if (order == 2) m = m * m;
                    for (int k = 0; k < g.n_z; ++k) F.at(c, i0, i1, k) *= m;
                }
        return inverse_partial_fourier(F);
    }

    const NormalStencil st = normal_stencil(g, order);
    LayerField out(g, f.components);
    for (int c = 0; c < f.components; ++c)
        for (int i0 = 0; i0 < g.nt(0); ++i0)
            for (int i1 = 0; i1 < g.nt(1); ++i1)
                for (int k = 0; k < g.n_z; ++k) {
                    std::complex<double> acc(0.0, 0.0);
                    for (int i = 0; i < 9; ++i)
                        acc += st.w[k][i] * f.at(c, i0, i1, st.base[k] + i);
                    out.at(c, i0, i1, k) = acc;
                }
    return out;
}

double lq_norm(const LayerField& f, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
    const LayerGrid& g = f.grid;
    const double wt = (g.period[0] / g.nt(0)) * (g.dim == 3 ? g.period[1] / g.nt(1) : 1.0);
    // pairwise accumulation over the tangential index keeps results
    // run-to-run reproducible regardless of threading
    double total = 0.0;
    for (int i0 = 0; i0 < g.nt(0); ++i0)
        for (int i1 = 0; i1 < g.nt(1); ++i1)
            for (int k = 0; k < g.n_z; ++k) {
                double mag2 = 0.0;
                for (int c = 0; c < f.components; ++c) {
                    const auto v = f.at(c, i0, i1, k);
                    mag2 += std::norm(v);
                }
                const double wz = (k == 0 || k == g.n_z - 1) ? 0.5 * g.dz() : g.dz();
                total += wt * wz * std::pow(mag2, 0.5 * q);
            }
    return std::pow(total, 1.0 / q);
}

double lq_norm_component(const LayerField& f, int c, double q) {
    LayerField tmp(f.grid, 1);
    for (int i0 = 0; i0 < f.grid.nt(0); ++i0)
        for (int i1 = 0; i1 < f.grid.nt(1); ++i1)
            for (int k = 0; k < f.grid.n_z; ++k) tmp.at(0, i0, i1, k) = f.at(c, i0, i1, k);
    return lq_norm(tmp, q);
}

void dump_field_csv(const LayerField& f, const std::filesystem::path& csv_path) {
    const LayerGrid& g = f.grid;
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("dump_field_csv: cannot open " + csv_path.string());
    out.precision(17);
    for (int d = 0; d < g.dim - 1; ++d) out << "x" << (d + 1) << ",";
    out << "x" << g.dim << ",component,re,im\n";
    for (int i0 = 0; i0 < g.nt(0); ++i0)
        for (int i1 = 0; i1 < g.nt(1); ++i1)
            for (int k = 0; k < g.n_z; ++k)
                for (int c = 0; c < f.components; ++c) {
                    out << (g.period[0] * i0 / g.nt(0)) << ",";
                    if (g.dim == 3) out << (g.period[1] * i1 / g.nt(1)) << ",";
                    out << g.z(k) << "," << c << "," << f.at(c, i0, i1, k).real() << ","
                        << f.at(c, i0, i1, k).imag() << "\n";
                }
    // grid metadata sidecar
    nlohmann::json meta;
    meta["dim"] = g.dim;
    meta["n_tan"] = std::vector<int>(g.n_tan.begin(), g.n_tan.begin() + (g.dim - 1));
    meta["period"] = std::vector<double>(g.period.begin(), g.period.begin() + (g.dim - 1));
    meta["n_z"] = g.n_z;
    meta["delta"] = g.delta;
    meta["pad_factor"] = g.pad_factor;
    meta["components"] = f.components;
    std::ofstream side(csv_path.string() + ".json");
    side << meta.dump(2) << "\n";
}

LayerField load_field_csv(const std::filesystem::path& csv_path) {
    std::ifstream side(csv_path.string() + ".json");
    if (!side) throw std::runtime_error("load_field_csv: missing sidecar for " + csv_path.string());
    nlohmann::json meta = nlohmann::json::parse(side);
    LayerGrid g;
    g.dim = meta.at("dim").get<int>();
    const auto nt = meta.at("n_tan").get<std::vector<int>>();
    const auto pw = meta.at("period").get<std::vector<double>>();
    for (size_t d = 0; d < nt.size(); ++d) {
        g.n_tan[d] = nt[d];
        g.period[d] = pw[d];
    }
    if (g.dim == 2) g.n_tan[1] = 1;
    g.n_z = meta.at("n_z").get<int>();
    g.delta = meta.at("delta").get<double>();
    g.pad_factor = meta.at("pad_factor").get<double>();
    LayerField f(g, meta.at("components").get<int>());

    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("load_field_csv: cannot open " + csv_path.string());
    std::string line;
    std::getline(in, line);  // header
    size_t row = 0;
    const size_t per_point = static_cast<size_t>(f.components);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<double> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(std::stod(tok));
        const size_t ncoord = static_cast<size_t>(g.dim);
        if (cols.size() != ncoord + 3) throw std::runtime_error("load_field_csv: malformed row");
        const size_t point = row / per_point;
        const int c = static_cast<int>(cols[ncoord]);
        const int k = static_cast<int>(point % g.n_z);
        const int i1 = static_cast<int>((point / g.n_z) % g.nt(1));
        const int i0 = static_cast<int>(point / g.n_z / g.nt(1));
        f.at(c, i0, i1, k) = {cols[ncoord + 1], cols[ncoord + 2]};
        ++row;
    }
    return f;
}

}  // namespace layerstokes
