#include "uncbound/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace uncbound {

namespace {

constexpr int kSeriesTerms = 48;

// zeta(k) for k = 2..kSeriesTerms+1, by partial sum plus Euler-Maclaurin tail.
std::array<double, kSeriesTerms + 2> make_zeta_table() {
    // B_{2i}/(2i)!
    constexpr std::array<double, 7> bern = {
        1.0 / 12.0,        -1.0 / 720.0,       1.0 / 30240.0,        -1.0 / 1209600.0,
        1.0 / 47900160.0,  -691.0 / 1307674368000.0, 1.0 / 74724249600.0};
    std::array<double, kSeriesTerms + 2> z{};
    constexpr int N = 12;
    for (int k = 2; k < kSeriesTerms + 2; ++k) {
        const double s = k;
        double head = 0.0;
        for (int j = N - 1; j >= 1; --j) head += std::pow(j, -s);
        double tail = std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);
        // rising factorial s (s+1) ... (s+2i-2) times N^{-s-2i+1}
        double rising = s;
        double npow = std::pow(N, -s - 1.0);
        for (std::size_t i = 0; i < bern.size(); ++i) {
            tail += bern[i] * rising * npow;
            rising *= (s + 2.0 * i + 1.0) * (s + 2.0 * i + 2.0);
            npow /= double(N) * N;
        }
        z[k] = head + tail;
    }
    return z;
}

const std::array<double, kSeriesTerms + 2>& zeta_table() {
    static const auto table = make_zeta_table();
    return table;
}

// ln Gamma(1 + e) for |e| <= 1/4 via its Taylor series.
double log_gamma_1p_series(double e) {
    constexpr double euler_gamma = 0.57721566490153286061;
    const auto& z = zeta_table();
    double sum = 0.0;
    double pw = e * e;
    for (int k = 2; k < kSeriesTerms + 2; ++k) {
        const double term = z[k] * pw / k;
        sum += (k % 2 == 0) ? term : -term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        pw *= e;
    }
    return -euler_gamma * e + sum;
}

// Stirling series, valid to full double precision for z >= 15.
double log_gamma_stirling(double z) {
    constexpr std::array<double, 8> coef = {
        1.0 / 12.0,           -1.0 / 360.0,     1.0 / 1260.0,       -1.0 / 1680.0,
        1.0 / 1188.0,         -691.0 / 360360.0, 1.0 / 156.0,        -3617.0 / 122400.0};
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    double series = 0.0;
    double pw = inv;
    for (double c : coef) {
        series += c * pw;
        pw *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

std::uint64_t degeneracy(LevelIndex k, Dimension n) {
    if (n.value() > kMaxExactDimension)
        throw OverflowError("degeneracy: dimension above exact ceiling; use log_degeneracy");
    // C(k + i, i) = C(k + i - 1, i - 1) (k + i) / i; dividing the gcd out of
    // the running value first keeps every step an exact integer product.
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i < static_cast<std::uint64_t>(n.value()); ++i) {
        const std::uint64_t g = std::gcd(acc, i);
        const std::uint64_t top = k + i;
        if (top < k) throw OverflowError("degeneracy: level index too large; use log_degeneracy");
        const std::uint64_t factor = top / (i / g);
        if (__builtin_mul_overflow(acc / g, factor, &acc))
            throw OverflowError("degeneracy: result exceeds 64-bit range; use log_degeneracy");
    }
    return acc;
}

double log_degeneracy(LevelIndex k, Dimension n) {
    const std::uint64_t a = k;
    const std::uint64_t b = static_cast<std::uint64_t>(n.value() - 1);
    const std::uint64_t small = a < b ? a : b;
    const std::uint64_t large = a < b ? b : a;
    // ln C(large + small, small)
    if (small <= 256) {
        double sum = 0.0;
        for (std::uint64_t i = 1; i <= small; ++i)
            sum += std::log1p(static_cast<double>(large) / static_cast<double>(i));
        return sum;
    }
    return log_gamma(static_cast<double>(large + small) + 1.0) -
           log_gamma(static_cast<double>(large) + 1.0) -
           log_gamma(static_cast<double>(small) + 1.0);
}

double log_gamma(double x) {
    if (!(x > 0.0) || std::isinf(x)) throw DomainError("log_gamma: argument must be positive and finite");
    if (x == 1.0 || x == 2.0) return 0.0;
    if (std::fabs(x - 1.0) <= 0.25) return log_gamma_1p_series(x - 1.0);
    if (std::fabs(x - 2.0) <= 0.25) return log_gamma_1p_series(x - 2.0) + std::log1p(x - 2.0);
    if (x >= 15.0) return log_gamma_stirling(x);
    // Shift up to the Stirling range: ln Gamma(x) = ln Gamma(x + j) - ln(x (x+1) ... (x+j-1)).
    double prod = 1.0;
    double z = x;
    while (z < 15.0) {
        prod *= z;
        z += 1.0;
    }
    return log_gamma_stirling(z) - std::log(prod);
}

}  // namespace uncbound
