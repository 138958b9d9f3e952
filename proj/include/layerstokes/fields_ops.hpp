#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "layerstokes/field.hpp"

namespace layerstokes {

/// Forward partial Fourier transform over the tangential dimensions only,
/// quadrature weight (period/n) per dimension; normal profiles untouched.
SpectralField partial_fourier(const LayerField& f);
LayerField inverse_partial_fourier(const SpectralField& F);

enum class CutoffKind { phi_delta, phi_0 };

/// C-infinity cutoff: phi_delta vanishes for |x| <= delta/3, equals 1 for
/// |x| >= 2 delta/3, transitions by the exponential blend
/// s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}); phi_0 = 1 - phi_delta.
double cutoff_phi(double x, double delta, CutoffKind which);

enum class ExtendKind { odd_at_0, odd_at_delta, even_at_0, even_at_delta };

/// Cut-off odd/even reflection of a scalar field about one face, sampled on
/// the padded normal period (face samples keep the inside value; the odd
/// reflection point itself samples 0 by antisymmetry).
PaddedField extend_odd_even(const LayerField& f, ExtendKind kind);

/// Zero extension to the padded period.
PaddedField extend_E0(const LayerField& f);

/// Parity extension of an N-component field: components j < N get
/// f_{j0}^e + f_{j delta}^o, component N gets f_{N0}^o + f_{N delta}^e.
PaddedField extend_Ef(const LayerField& f);

enum class Side { top, bottom };

/// Trace at x_N = delta (top) or x_N = 0 (bottom); one tangential array per
/// component, component-major.
std::vector<std::complex<double>> boundary_trace(const LayerField& f, Side side);
std::vector<std::complex<double>> boundary_trace(const SpectralField& f, Side side);

/// Partial derivative of given order (1 or 2).  Tangential directions use the
/// exact i*xi multipliers; the normal direction uses 9-point 8th-order finite
/// differences with one-sided stencils at the faces.
LayerField spectral_derivatives(const LayerField& f, int order, int direction);

/// Discrete L_q norm: uniform tangential weights x trapezoid in the normal
/// direction; vector fields use the pointwise Euclidean magnitude.
double lq_norm(const LayerField& f, double q);
double lq_norm_component(const LayerField& f, int c, double q);

/// CSV dump `x1,...,x{N},component,re,im` (tangential-major row order) with a
/// JSON sidecar describing the grid.
void dump_field_csv(const LayerField& f, const std::filesystem::path& csv_path);
LayerField load_field_csv(const std::filesystem::path& csv_path);

/// Fornberg finite-difference weights for the m-th derivative at point z
/// from the given nodes.
std::vector<double> fd_weights(double z, std::span<const double> nodes, int m);

/// Restriction of a padded field to the closed layer grid.
LayerField restrict_to_layer(const PaddedField& p, int components);

}  // namespace layerstokes
