#pragma once

#include <complex>

#include "layerstokes/field.hpp"
#include "layerstokes/fields_ops.hpp"

namespace layerstokes {

/// Problem data on the layer: force f (N components), divergence datum g
/// (scalar), boundary datum h (N components, traces taken at the faces).
struct DataBundle {
    LayerField f;
    LayerField g;
    LayerField h;
};

/// S(u, theta)_{jk} = mu (d_k u_j + d_j u_k) - theta delta_{jk}, N*N
/// components indexed j*N + k, derivatives via spectral_derivatives.
LayerField stress_tensor(const LayerField& u, const LayerField& theta, double mu);

/// Solution of div v = g on the layer via the odd-extension multiplier.
struct DivergenceSolution {
    LayerField v;     // N components
    LayerField grad;  // N*N components, grad[j*N+k] = d_k v_j (padded-spectral, restricted)
};
DivergenceSolution solve_divergence(const LayerField& g);

/// Whole-space Stokes resolvent applied to an extended force field.
struct WholeSpaceSolution {
    LayerField v;       // N components
    LayerField pi;      // scalar
    LayerField grad_v;  // N*N components, d_k v_j
};
WholeSpaceSolution solve_stokes_wholespace(const PaddedField& fE, std::complex<double> lambda,
                                           double mu);

/// ftilde = f - lambda V0 g + Div(mu D(V0 g)).
LayerField reduce_f_tilde(const DataBundle& d, std::complex<double> lambda, double mu);

/// htilde = h - mu D(V0 g) nu~ - S(v, pi) nu~ with the blended normal
/// nu~_N(x) = phi_delta(x) - phi_0(x).
LayerField reduce_h_tilde(const DataBundle& d, const DivergenceSolution& dv,
                          const WholeSpaceSolution& ws, double mu);

}  // namespace layerstokes
