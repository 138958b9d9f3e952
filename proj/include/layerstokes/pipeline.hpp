#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "layerstokes/boundary_system.hpp"
#include "layerstokes/reduction.hpp"
#include "layerstokes/tangential.hpp"

namespace layerstokes {

/// Closed-form bundle for one tangential mode of the boundary-only solution.
struct SpectralSolutionMode {
    int i0 = 0, i1 = 0;  // tangential FFT indices
    ModeSymbols s;
    ModeCoefficients c;
    std::vector<UjMode> uj;  // dim-1 tangential components
};

/// Per-mode closed forms for the whole boundary-only solve, evaluable at any
/// x_N in [0, delta] without a normal grid.
struct SpectralSolution {
    LayerGrid grid;
    ResolventParameter p;
    LayerConfig cfg;
    std::vector<SpectralSolutionMode> modes;
    ZeroModeSolution zero;

    /// (u_1..u_{N-1}, u_N, theta) of a single mode at height x, derivative
    /// `order` in x_N (0..3).
    void eval_mode(size_t mode_index, double x, int order,
                   std::complex<double>* u_out /* dim entries */,
                   std::complex<double>* theta_out) const;
};

struct SolutionPair {
    LayerField u;      // dim components
    LayerField theta;  // scalar
    std::optional<SpectralSolution> spectral;
};

/// Boundary-only problem: lambda u - Div S(u, theta) = 0, div u = 0, with
/// S(u, theta) nu = h on both faces.
SolutionPair solve_boundary_only(const LayerField& h, const ResolventParameter& p,
                                 const LayerConfig& cfg, int threads = 1,
                                 SolveMethod method = SolveMethod::cramer);

/// Full problem via the reduction chain: u = V0 g + S0 ftilde + (boundary
/// correction with htilde).
SolutionPair solve_full(const DataBundle& d, const ResolventParameter& p, const LayerConfig& cfg,
                        int threads = 1);

enum class ManufacturedKind { single_mode_boundary, smooth_full };

struct ManufacturedCase {
    DataBundle data;
    SolutionPair exact;
};

ManufacturedCase manufactured_case(ManufacturedKind kind, const LayerGrid& grid,
                                   const ResolventParameter& p, const LayerConfig& cfg,
                                   std::uint64_t seed);

/// Relative L2-grid residual norms of the three equations.
struct ResidualReport {
    double interior = 0.0;    // ||lambda u - Div S - f|| / scale
    double divergence = 0.0;  // ||div u - g|| / scale
    double trace_top = 0.0;   // ||S(u,theta)nu - h|| at x_N = delta / scale
    double trace_bottom = 0.0;
};

ResidualReport residual_full(const SolutionPair& sol, const DataBundle& d,
                             const ResolventParameter& p, const LayerConfig& cfg);

/// LHS/RHS of the resolvent estimate with g = 0:
/// ||(lambda u, lambda^{1/2} grad u, grad^2 u, grad theta)||_q /
/// (||f||_q + ||(lambda^{1/2} h, grad h)||_q).  Rejects g != 0.
double resolvent_ratio(const SolutionPair& sol, const DataBundle& d, const ResolventParameter& p,
                       double q);

/// Exact derivative fields from the closed-form bundle: d^a_tan d^order_N of
/// component c (tangential derivative as a multi-index over the first dim-1
/// directions).
LayerField bundle_derivative_field(const SpectralSolution& sp, bool of_theta, int component,
                                   const std::array<int, 2>& tan_orders, int normal_order);

}  // namespace layerstokes
