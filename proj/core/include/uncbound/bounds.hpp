#pragma once

#include <cstddef>
#include <optional>

#include "uncbound/purity.hpp"
#include "uncbound/spectrum_bound.hpp"

namespace uncbound {

// --- Hoelder construction -------------------------------------------------

/// Cutoff M and conjugate exponents 1/p + 1/r = 1 of the Hoelder chain.
struct HolderParams {
    double M;
    double r;
    double p;

    /// Requires M >= 0 and r > 1; p is derived.
    static HolderParams make(double M, double r);
};

/// B(M, n, r) = sum_{0 <= m <= M} g_m (M - m)^r, for real M >= 0 and r >= 1.
double holder_sum_exact(double M, Dimension n, double r);

/// ln B(M, n, r); finite for M > 0 even where B itself overflows.
double log_holder_sum_exact(double M, Dimension n, double r);

/// Continuum limit M^{n+r} / prod_{k=1}^{n} (r + k), M > 0, r >= 1.
double holder_sum_asymptotic(double M, Dimension n, double r);

/// (1/n) { 2M + n - 2 [mu B(M, n, r)]^{1/r} }: a valid per-dimension lower
/// bound for every M >= 0. Requires r >= 1 and 0 < mu <= 1.
double holder_bracket(double M, Dimension n, double r, double mu);

/// Grouped spectrum xi_m proportional to g_m (M - m)^{r-1} on 0 <= m <= M,
/// the family at which the bracket is attained. Requires M > 0.
GroupedSpectrum holder_extremal_family(const HolderParams& h, Dimension n);

/// mu^(r) of holder_extremal_family, computed from two Hoelder sums.
double holder_extremal_purity(double M, Dimension n, double r);

/// Supremum over M of holder_bracket. The finite variant runs a bracket
/// expansion from M = 0, golden-section refinement and a stationarity
/// polish; aux holds the optimizing M. The superpurity variant uses r = 1;
/// the entropy variant delegates to entropy_bound(-ln mu, n).
/// Throws DomainError for mu outside (0, 1] and SolverError on failure.
BoundResult purity_bound(double mu, Dimension n, PurityOrder order);

/// max(1, (C(n, r) / mu)^{1/n}) per dimension; the small-purity form.
BoundResult purity_bound_asymptotic(double mu, Dimension n, double r);

/// 2^n r^r prod_{k=1}^{n}(r + k) / (n + r)^{n + r}, r >= 1.
double asymptotic_C(Dimension n, double r);

/// (2/e)^n, the r -> infinity end of asymptotic_C.
double asymptotic_C_entropy_limit(Dimension n);

// --- interpolated r = 2 relation ------------------------------------------

struct InterpParam {
    double L;
};

/// mu(L) = (n + 2L)(n + 1)! Gamma(L) / [(n + 2) Gamma(L + n + 1)]
double interpolated_purity(InterpParam L, Dimension n);

/// Solves mu(L) = mu for L >= 1 by bisection; per_dim_product is
/// (n + 2L)/(n + 2) and aux holds L.
BoundResult interpolated_bound_r2(double mu, Dimension n);

// --- entropy-bounded relation ---------------------------------------------

/// Thermal family xi_m = A g_m exp(-beta m), A = (1 - e^{-beta})^n.
struct ThermalParams {
    double beta;  ///< +inf encodes the pure vacuum
    double log_normalization;
};

/// Entropy of the n-mode thermal state, n [beta/(e^beta - 1) - ln(1 - e^{-beta})].
double thermal_entropy(double beta, Dimension n);

/// Inverts thermal_entropy; S = 0 gives beta = +inf.
ThermalParams thermal_beta_from_entropy(double S, Dimension n);

/// Materializes the thermal grouped spectrum until the neglected tail is
/// below double resolution; nullopt if more than max_levels are needed.
std::optional<GroupedSpectrum> thermal_grouped_spectrum(const ThermalParams& t, Dimension n,
                                                        std::size_t max_levels);

/// Entropy-bounded per-dimension minimum (1 + e^{-beta})/(1 - e^{-beta}).
/// When the thermal spectrum fits in a modest number of levels the value is
/// also evaluated through bound_from_grouped and the two must agree to 1e-9;
/// residual reports their relative difference.
BoundResult entropy_bound(double S, Dimension n);

/// High-entropy form: volume e^S (2/e)^n, floored at 1.
BoundResult entropy_bound_asymptotic(double S, Dimension n);

namespace detail {
// Separate evaluation routes for B, exposed for cross-checking.
double log_holder_sum_direct(double M, Dimension n, double s);
double log_holder_sum_euler_maclaurin(double M, Dimension n, double s);
}  // namespace detail

}  // namespace uncbound
