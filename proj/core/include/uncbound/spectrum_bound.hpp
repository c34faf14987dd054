#pragma once

#include <optional>
#include <string_view>

#include "uncbound/purity.hpp"

namespace uncbound {

enum class BoundMethod {
    spectrum,        ///< greedy grouping of an eigenspectrum
    grouped,         ///< direct evaluation on a grouped spectrum
    interpolated_r2, ///< interpolating r = 2 relation, root in L
    thermal,         ///< entropy-bounded thermal minimizer, root in beta
    holder,          ///< supremum of the Hoelder bracket over M
    asymptotic,      ///< small-purity closed form C(n, r) / mu
    brute_force,     ///< constrained numerical minimization (oracle)
};

std::string_view to_string(BoundMethod m) noexcept;

/// Lower bound on Delta X Delta P per dimension, in units of hbar/2.
struct BoundResult {
    double per_dim_product = 1.0;
    double volume = 1.0;  ///< per_dim_product^n
    BoundMethod method = BoundMethod::grouped;
    std::optional<double> aux;  ///< L, beta or M, depending on method
    double residual = 0.0;
    int iterations = 0;
};

/// Fills volume from per_dim_product and n.
BoundResult make_bound(double per_dim_product, Dimension n, BoundMethod method);

/// Assigns sorted eigenvalues greedily to Fock levels: the first g_0 to level
/// 0, the next g_1 to level 1 and so on. Trailing empty levels are dropped.
GroupedSpectrum group_spectrum(const Spectrum& s, Dimension n);

/// (1/n) sum_k (2k + n) xi_k
BoundResult bound_from_grouped(const GroupedSpectrum& g);

BoundResult bound_from_spectrum(const Spectrum& s, Dimension n);

}  // namespace uncbound
