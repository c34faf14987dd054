#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uncbound/special_fn.hpp"

namespace uncbound {

/// Density-matrix eigenvalues in nonincreasing order, summing to one.
class Spectrum {
public:
    static constexpr double kTraceTolerance = 1e-10;
    static constexpr double kOrderTolerance = 1e-12;
    static constexpr std::size_t kMaxLength = 10'000'000;

    /// Validates and stores the eigenvalues. Inputs mis-ordered by at most
    /// kOrderTolerance are re-sorted; anything worse is a DomainError, as are
    /// negative entries, a trace off by more than kTraceTolerance, an empty
    /// input or more than kMaxLength entries.
    explicit Spectrum(std::vector<double> eigenvalues);

    std::span<const double> eigenvalues() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Per-Fock-level weights xi_k for dimension n. Level k carries
/// degeneracy(k, n) states, each with weight theta_k = xi_k / g_k.
class GroupedSpectrum {
public:
    static constexpr double kTraceTolerance = 1e-10;

    GroupedSpectrum(Dimension n, std::vector<double> weights);

    Dimension dimension() const noexcept { return n_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t levels() const noexcept { return weights_.size(); }

    /// ln g_k for every stored level.
    std::span<const double> log_degeneracies() const noexcept { return log_g_; }

    /// Per-state weight xi_k / g_k.
    double state_weight(std::size_t k) const;

private:
    Dimension n_;
    std::vector<double> weights_;
    std::vector<double> log_g_;
};

/// Selects a generalized purity: finite r > 1, or one of the two limits.
class PurityOrder {
public:
    enum class Kind { finite, superpurity, entropy };

    static PurityOrder finite(double r);
    static PurityOrder superpurity() noexcept { return PurityOrder(Kind::superpurity, 1.0); }
    static PurityOrder entropy() noexcept { return PurityOrder(Kind::entropy, 0.0); }

    Kind kind() const noexcept { return kind_; }
    /// The order r; 1 for superpurity, +inf for the entropy limit.
    double r() const noexcept;

private:
    PurityOrder(Kind k, double r) noexcept : kind_(k), r_(r) {}
    Kind kind_;
    double r_;
};

double purity_from_spectrum(const Spectrum& s, PurityOrder order);
double purity_from_grouped(const GroupedSpectrum& g, PurityOrder order);

/// Von Neumann entropy of the state a grouped spectrum describes.
double entropy_from_grouped(const GroupedSpectrum& g);

/// Von Neumann entropy of a raw eigenspectrum.
double entropy_from_spectrum(const Spectrum& s);

}  // namespace uncbound
