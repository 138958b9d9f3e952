#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace layerstokes {

/// Discretization of the layer R^{N-1} x (0, delta): periodic tangential box,
/// closed uniform normal grid x_k = k delta/(n_z - 1), and a padded periodic
/// normal interval [-delta, (pad_factor - 1) delta) of the same spacing for
/// whole-space operations.
struct LayerGrid {
    int dim = 3;
    std::array<int, 2> n_tan{8, 8};       // n_tan[1] ignored (forced 1) when dim == 2
    std::array<double, 2> period{6.283185307179586, 6.283185307179586};
    int n_z = 64;
    double delta = 1.0;
    double pad_factor = 4.0;

    void validate() const {
        if (dim != 2 && dim != 3) throw std::invalid_argument("LayerGrid: dim must be 2 or 3");
        for (int d = 0; d < dim - 1; ++d) {
            if (n_tan[d] < 4 || n_tan[d] % 2 != 0)
                throw std::invalid_argument("LayerGrid: n_tan must be >= 4 and even");
            if (!(period[d] > 0.0)) throw std::invalid_argument("LayerGrid: period must be > 0");
        }
        if (n_z < 4 || n_z % 2 != 0)
            throw std::invalid_argument("LayerGrid: n_z must be >= 4 and even");
        if (!(delta > 0.0)) throw std::invalid_argument("LayerGrid: delta must be > 0");
        if (!(pad_factor >= 2.0) || !(pad_factor * 3.0 > 8.0))
            throw std::invalid_argument("LayerGrid: pad_factor must be >= 2 and > 8/3");
        const double np = pad_factor * (n_z - 1);
        if (std::abs(np - std::round(np)) > 1e-9)
            throw std::invalid_argument("LayerGrid: pad_factor*(n_z-1) must be an integer");
    }

    int nt(int d) const { return (d < dim - 1) ? n_tan[d] : 1; }
    int tan_count() const { return nt(0) * nt(1); }
    double dz() const { return delta / (n_z - 1); }
    double z(int k) const { return k * dz(); }

    int n_zpad() const { return static_cast<int>(std::llround(pad_factor * (n_z - 1))); }
    double pad_period() const { return pad_factor * delta; }
    double pad_start() const { return -delta; }
    double zpad(int m) const { return pad_start() + m * dz(); }
    /// index of x = 0 within the padded normal grid
    int pad_origin() const { return n_z - 1; }

    /// tangential wavenumber of FFT index k in dimension d (standard order)
    double freq(int d, int idx) const {
        const int n = nt(d);
        const int k = (idx <= n / 2) ? idx : idx - n;
        return 2.0 * 3.14159265358979323846 * k / period[d];
    }
    /// padded normal wavenumber of FFT index m
    double freq_pad(int idx) const {
        const int n = n_zpad();
        const int k = (idx <= n / 2) ? idx : idx - n;
        return 2.0 * 3.14159265358979323846 * k / pad_period();
    }

    bool same_as(const LayerGrid& o) const {
        return dim == o.dim && n_tan == o.n_tan && period == o.period && n_z == o.n_z &&
               delta == o.delta && pad_factor == o.pad_factor;
    }
};

}  // namespace layerstokes
