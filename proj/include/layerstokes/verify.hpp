#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "layerstokes/grid.hpp"
#include "layerstokes/symbols.hpp"

namespace layerstokes {

/// Scan domain: log-spaced |lambda| times an argument fan inside the sector,
/// log-spaced A > 0.
struct ScanGrid {
    std::vector<std::complex<double>> lambda_samples;
    std::vector<double> A_samples;
    double epsilon = 0.25 * 3.14159265358979323846;
    double gamma0 = 1.0;

    static ScanGrid logspace(double lmin, double lmax, int nl, double amin, double amax, int na,
                             int nargs, double epsilon, double gamma0);
};

struct ScanRow {
    std::complex<double> lambda;
    double A = 0.0;
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

struct ScanReport {
    std::string name;
    std::vector<ScanRow> rows;
    double inf_ratio = 0.0;
    double sup_ratio = 0.0;
    std::string metadata;

    void recompute_summary();
    void write_csv(const std::filesystem::path& path) const;
    void write_summary_json(const std::filesystem::path& path) const;
};

/// ratio = |det L| / ((|lambda|^{1/2} + A)^6 min{1, A}); the reported inf is
/// the empirical sector lower-bound constant.  Also emits the per-factor
/// reports |l_plus| / (.)^3 and |l_minus| / ((.)^3 min{1, A}).
struct DetLowerBoundReport {
    ScanReport det, factor_plus, factor_minus;
};
DetLowerBoundReport scan_det_lower_bound(const ScanGrid& g, const LayerConfig& cfg,
                                         int threads = 1);

/// Central-difference estimates of (tau d_tau)^l d_xi^alpha (1/det L) for
/// l in {0,1}, |alpha| <= max_alpha, reduced to radial A-derivatives; the
/// fitted constant is sup |measured| / ((|lambda|^{1/2}+A)^{-6} (1+1/A)
/// A^{-|alpha|}).
struct InvDetDerivativeReport {
    // fitted[l][k] for l in {0,1} (tau-derivative order), k = |alpha'| <= 2
    double fitted[2][3] = {{0, 0, 0}, {0, 0, 0}};
    std::vector<ScanReport> reports;  // one per (l, k)
    double rel_step = 1e-4;
};
InvDetDerivativeReport scan_inv_det_derivatives(const ScanGrid& g, const LayerConfig& cfg,
                                                int max_alpha = 2, double rel_step = 1e-4,
                                                int threads = 1);

/// Positivity of the real-axis determinant factors f_A^{+-}(x) on
/// x in (1, xmax], A in [amin, amax]; also checks the factorized-bound
/// ingredients p_i >= q_i.
struct FaPositivityReport {
    double min_f_plus = 0.0;
    double min_f_minus = 0.0;
    bool ingredients_ok = false;
    ScanReport plus, minus;
};
FaPositivityReport check_fA_positivity(int nx, double xmax, int na, double amin, double amax,
                                       double delta);

/// Least-squares slope of log |det L| against log A over [amin, amax]
/// (lambda = 0 uses the scan-only symbol path with B = A).
double fit_det_slope(std::complex<double> lambda, double amin, double amax, int n, double mu,
                     double delta);

/// Fitted equivalence constants c, C with c (|l|^{1/2}+A) <= Re B <= |B| <=
/// C (|l|^{1/2}+A), and the same for |D3| against (.)^3.
struct BEquivalenceReport {
    double c_B = 0.0, C_B = 0.0;
    double c_D3 = 0.0, C_D3 = 0.0;
    ScanReport b_low, b_high, d3_low, d3_high;
};
BEquivalenceReport check_B_equivalence(const ScanGrid& g, double mu);

/// Monte-Carlo estimate of the randomized-sum ratio of Definition-style
/// R-boundedness for one operator family.
enum class RBoundOperator { lambda_S, grad2_S, gradP };

struct RBoundRow {
    int m = 0;
    int trial = 0;
    double ratio = 0.0;
};
struct RBoundReport {
    std::vector<int> m_values;
    std::vector<double> max_ratio;   // per m
    std::vector<double> mean_ratio;  // per m
    std::vector<RBoundRow> rows;
    double trend() const { return max_ratio.empty() ? 0.0 : max_ratio.back() / max_ratio.front(); }
    void write_csv(const std::filesystem::path& path) const;
};
RBoundReport estimate_r_bound(RBoundOperator op, const std::vector<std::complex<double>>& lambdas,
                              const std::vector<int>& m_values, int trials, double q,
                              std::uint64_t seed, const LayerGrid& grid, const LayerConfig& cfg,
                              int threads = 1);

/// Closed-form det/cofactors against extended-precision elimination and
/// signed minors.
struct CrosscheckReport {
    double max_det_rel = 0.0;
    double max_cofactor_rel = 0.0;
    double max_adjugate_rel = 0.0;
};
CrosscheckReport crosscheck_cofactors(int samples, std::uint64_t seed, double epsilon,
                                      double gamma0, double amin, double amax,
                                      const LayerConfig& cfg, int threads = 1);

}  // namespace layerstokes
