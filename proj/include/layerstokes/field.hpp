#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "layerstokes/grid.hpp"

namespace layerstokes {

/// Gridded complex field on the layer.  Storage is row-major with the
/// component outermost, then tangential indices, normal index innermost:
/// index = ((c n0 + i0) n1 + i1) n_z + k.
struct LayerField {
    LayerGrid grid;
    int components = 1;
    std::vector<std::complex<double>> values;

    LayerField() = default;
    LayerField(const LayerGrid& g, int comps) : grid(g), components(comps) {
        grid.validate();
        values.assign(static_cast<size_t>(comps) * g.tan_count() * g.n_z, {0.0, 0.0});
    }

    std::complex<double>& at(int c, int i0, int i1, int k) {
        return values[idx(c, i0, i1, k)];
    }
    const std::complex<double>& at(int c, int i0, int i1, int k) const {
        return values[idx(c, i0, i1, k)];
    }
    size_t idx(int c, int i0, int i1, int k) const {
        return ((static_cast<size_t>(c) * grid.nt(0) + i0) * grid.nt(1) + i1) * grid.n_z + k;
    }
    size_t comp_size() const { return static_cast<size_t>(grid.tan_count()) * grid.n_z; }

    LayerField& operator+=(const LayerField& o) {
        check_shape(o);
        for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
        return *this;
    }
    LayerField& operator-=(const LayerField& o) {
        check_shape(o);
        for (size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
        return *this;
    }
    LayerField& operator*=(std::complex<double> a) {
        for (auto& v : values) v *= a;
        return *this;
    }
    void check_shape(const LayerField& o) const {
        if (components != o.components || !grid.same_as(o.grid))
            throw std::invalid_argument("LayerField: shape mismatch");
    }
};

/// Same tangential-mode x normal-sample layout, but the tangential axes hold
/// Fourier modes (standard FFT ordering, forward weight period/n per dim).
struct SpectralField {
    LayerGrid grid;
    int components = 1;
    std::vector<std::complex<double>> values;

    SpectralField() = default;
    SpectralField(const LayerGrid& g, int comps) : grid(g), components(comps) {
        values.assign(static_cast<size_t>(comps) * g.tan_count() * g.n_z, {0.0, 0.0});
    }
    std::complex<double>& at(int c, int i0, int i1, int k) {
        return values[((static_cast<size_t>(c) * grid.nt(0) + i0) * grid.nt(1) + i1) * grid.n_z + k];
    }
    const std::complex<double>& at(int c, int i0, int i1, int k) const {
        return values[((static_cast<size_t>(c) * grid.nt(0) + i0) * grid.nt(1) + i1) * grid.n_z + k];
    }
};

/// Field on the padded periodic box (tangential box x padded normal period).
struct PaddedField {
    LayerGrid grid;
    int components = 1;
    std::vector<std::complex<double>> values;  // ((c n0 + i0) n1 + i1) n_zpad + m

    PaddedField() = default;
    PaddedField(const LayerGrid& g, int comps) : grid(g), components(comps) {
        values.assign(static_cast<size_t>(comps) * g.tan_count() * g.n_zpad(), {0.0, 0.0});
    }
    std::complex<double>& at(int c, int i0, int i1, int m) {
        return values[((static_cast<size_t>(c) * grid.nt(0) + i0) * grid.nt(1) + i1) * grid.n_zpad() + m];
    }
    const std::complex<double>& at(int c, int i0, int i1, int m) const {
        return values[((static_cast<size_t>(c) * grid.nt(0) + i0) * grid.nt(1) + i1) * grid.n_zpad() + m];
    }
};

}  // namespace layerstokes
