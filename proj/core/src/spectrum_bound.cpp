#include "uncbound/spectrum_bound.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "uncbound/detail/summation.hpp"

namespace uncbound {

std::string_view to_string(BoundMethod m) noexcept {
    switch (m) {
        case BoundMethod::spectrum: return "spectrum";
        case BoundMethod::grouped: return "grouped";
        case BoundMethod::interpolated_r2: return "interpolated";
        case BoundMethod::thermal: return "thermal";
        case BoundMethod::holder: return "holder";
        case BoundMethod::asymptotic: return "asymptotic";
        case BoundMethod::brute_force: return "brute-force";
    }
    return "unknown";
}

BoundResult make_bound(double per_dim_product, Dimension n, BoundMethod method) {
    BoundResult b;
    b.per_dim_product = per_dim_product;
    b.volume = std::pow(per_dim_product, n.value());
    b.method = method;
    return b;
}

GroupedSpectrum group_spectrum(const Spectrum& s, Dimension n) {
    std::vector<double> xi;
    const auto rho = s.eigenvalues();
    std::size_t pos = 0;
    for (LevelIndex k = 0; pos < rho.size(); ++k) {
        std::uint64_t capacity;
        try {
            capacity = degeneracy(k, n);
        } catch (const OverflowError&) {
            capacity = std::numeric_limits<std::uint64_t>::max();
        }
        const std::size_t take =
            static_cast<std::size_t>(std::min<std::uint64_t>(capacity, rho.size() - pos));
        detail::CompensatedSum level;
        for (std::size_t i = 0; i < take; ++i) level += rho[pos + i];
        xi.push_back(level.value());
        pos += take;
    }
    while (xi.size() > 1 && xi.back() == 0.0) xi.pop_back();
    return GroupedSpectrum(n, std::move(xi));
}

BoundResult bound_from_grouped(const GroupedSpectrum& g) {
    const double n = g.dimension().value();
    const auto xi = g.weights();
    // 1 + (2/n) sum k xi_k, using sum xi = 1; keeps the pure-state floor exact.
    detail::CompensatedSum excitation;
    for (std::size_t k = 1; k < xi.size(); ++k) excitation += static_cast<double>(k) * xi[k];
    return make_bound(1.0 + 2.0 * excitation.value() / n, g.dimension(), BoundMethod::grouped);
}

BoundResult bound_from_spectrum(const Spectrum& s, Dimension n) {
    auto b = bound_from_grouped(group_spectrum(s, n));
    b.method = BoundMethod::spectrum;
    return b;
}

}  // namespace uncbound
