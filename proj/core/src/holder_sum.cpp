// Evaluation of B(M, n, s) = sum_{0 <= m <= M} g_m (M - m)^s.
//
// Small M is summed term by term. Large M (the small-purity regime, where
// the optimal cutoff reaches 1e8 or more for n = 1) is split into a head
// 0..a handled by Euler-Maclaurin and an exactly summed tail a+1..floor(M)
// that contains the non-smooth endpoint m = M. All quantities are scaled by
// M^{n-1+s} so only ln B is ever formed.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "uncbound/bounds.hpp"
#include "uncbound/detail/summation.hpp"

namespace uncbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxPolyDimension = 24;
constexpr double kDirectTerms = 4096.0;
constexpr double kTailTerms = 1024.0;

// B_{2i}/(2i)! for i = 1..16.
constexpr std::array<double, 16> kBernoulliRatio = {
    0.083333333333333329,
    -0.0013888888888888889,
    3.3068783068783071e-05,
    -8.2671957671957675e-07,
    2.08767569878681e-08,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.5860620562778452e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.5347070396294673e-21,
    -8.9535174270375463e-23,
    2.2679524523376829e-24,
    -5.7447906688722025e-26,
};

// Coefficients of g(m) = prod_{i=1}^{d} (m + i)/i in powers of m, scaled so
// that G(u) = g(M u) / M^d = sum_c b_c u^c.
std::vector<double> scaled_degeneracy_poly(int d, double M) {
    std::vector<double> a(1, 1.0);
    for (int i = 1; i <= d; ++i) {
        std::vector<double> next(a.size() + 1, 0.0);
        for (std::size_t c = 0; c < a.size(); ++c) {
            next[c] += a[c];
            next[c + 1] += a[c] / i;
        }
        a.swap(next);
    }
    for (int c = 0; c <= d; ++c) a[c] *= std::pow(M, c - d);
    return a;
}

double falling(double x, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= x - i;
    return out;
}

// sum_c b_c fall(c, j) u^{c - j}
double poly_derivative(const std::vector<double>& b, int j, double u) {
    double acc = 0.0;
    for (int c = static_cast<int>(b.size()) - 1; c >= j; --c) acc = acc * u + b[c] * falling(c, j);
    return acc;
}

double binomial(int k, int j) {
    double out = 1.0;
    for (int i = 1; i <= j; ++i) out = out * (k - j + i) / i;
    return out;
}

void check_args(double M, double s) {
    if (!(M >= 0.0) || !std::isfinite(M)) throw DomainError("holder sum: M must be finite and >= 0");
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("holder sum: exponent must be >= 0");
}

// Sum of scaled terms G(m/M) ((M - m)/M)^s over m in [first, last].
double scaled_terms(const std::vector<double>& b, double M, double s, double first, double last) {
    detail::CompensatedSum acc;
    for (double m = first; m <= last; m += 1.0) {
        const double rest = (M - m) / M;
        if (rest <= 0.0 && s > 0.0) continue;
        acc += poly_derivative(b, 0, m / M) * std::pow(rest, s);
    }
    return acc.value();
}

}  // namespace

namespace detail {

double log_holder_sum_direct(double M, Dimension n, double s) {
    check_args(M, s);
    if (M == 0.0) return s > 0.0 ? kNegInf : 0.0;
    if (M < 1.0) return s * std::log(M);
    const int d = n.value() - 1;
    const double J = std::floor(M);
    if (d <= kMaxPolyDimension) {
        const auto b = scaled_degeneracy_poly(d, M);
        return (d + s) * std::log(M) + std::log(scaled_terms(b, M, s, 0.0, J));
    }
    // Large n: every term in log space, referenced to the largest possible term.
    const double ref = log_degeneracy(static_cast<LevelIndex>(J), n) + s * std::log(M);
    detail::CompensatedSum acc;
    for (double m = 0.0; m <= J; m += 1.0) {
        if (M - m <= 0.0 && s > 0.0) continue;
        acc += std::exp(log_degeneracy(static_cast<LevelIndex>(m), n) + s * std::log(M - m) - ref);
    }
    return ref + std::log(acc.value());
}

double log_holder_sum_euler_maclaurin(double M, Dimension n, double s) {
    check_args(M, s);
    const int d = n.value() - 1;
    const double tail = std::max(kTailTerms, std::ceil(8.0 * s));
    const double J = std::floor(M);
    if (d > kMaxPolyDimension || J < 2.0 * tail)
        throw DomainError("holder sum: Euler-Maclaurin route needs n <= 25 and M >> max(1024, 8 s)");

    const auto b = scaled_degeneracy_poly(d, M);
    const double a = J - tail;  // head is m = 0..a
    const double delta = M - a;
    const double ua = a / M;
    const double rest_a = delta / M;
    const double rest_a_pow = std::pow(rest_a, s);

    // Integral over [0, M] of the scaled summand: sum_c b_c M B(c + 1, s + 1).
    detail::CompensatedSum full;
    for (int c = 0; c <= d; ++c)
        full += b[c] * M * std::exp(std::lgamma(c + 1.0) + std::lgamma(s + 1.0) - std::lgamma(c + s + 2.0));
    // Integral over [a, M], via the Taylor expansion of g about M.
    detail::CompensatedSum piece;
    double ratio_pow = 1.0;  // (delta / M)^j / j!
    for (int j = 0; j <= d; ++j) {
        const double gj = poly_derivative(b, j, 1.0);
        const double term = gj * ratio_pow * delta * rest_a_pow / (s + j + 1.0);
        piece += (j % 2 == 0) ? term : -term;
        ratio_pow *= rest_a / (j + 1.0);
    }

    // k-th derivative of the scaled summand at u (rest = 1 - u, gap = M - m).
    auto derivative = [&](int k, double u, double rest, double gap) {
        detail::CompensatedSum acc;
        const double rest_pow = std::pow(rest, s);
        for (int j = 0; j <= std::min(k, d); ++j) {
            const int i = k - j;
            double t = binomial(k, j) * poly_derivative(b, j, u) * std::pow(M, -j) * falling(s, i) *
                       rest_pow * std::pow(gap, -i);
            acc += (i % 2 == 0) ? t : -t;
        }
        return acc.value();
    };

    detail::CompensatedSum total;
    total += full.value();
    total += -piece.value();
    total += 0.5 * (derivative(0, 0.0, 1.0, M) + derivative(0, ua, rest_a, delta));
    const int max_order = static_cast<int>(kBernoulliRatio.size());
    for (int i = 1; i <= max_order; ++i) {
        const int k = 2 * i - 1;
        const double corr =
            kBernoulliRatio[i - 1] * (derivative(k, ua, rest_a, delta) - derivative(k, 0.0, 1.0, M));
        total += corr;
        if (k > d + 1 && std::fabs(corr) < 1e-18 * std::fabs(total.value())) break;
    }
    total += scaled_terms(b, M, s, a + 1.0, J);
    return (d + s) * std::log(M) + std::log(total.value());
}

}  // namespace detail

namespace {

double log_holder_sum_any(double M, Dimension n, double s) {
    check_args(M, s);
    const double tail = std::max(kTailTerms, std::ceil(8.0 * s));
    const bool large = std::floor(M) > std::max(kDirectTerms, 2.0 * tail);
    if (large && n.value() - 1 <= kMaxPolyDimension) return detail::log_holder_sum_euler_maclaurin(M, n, s);
    return detail::log_holder_sum_direct(M, n, s);
}

}  // namespace

HolderParams HolderParams::make(double M, double r) {
    if (!(M >= 0.0) || !std::isfinite(M)) throw DomainError("holder params: M must be >= 0");
    if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("holder params: r must be > 1");
    return HolderParams{M, r, r / (r - 1.0)};
}

double log_holder_sum_exact(double M, Dimension n, double r) {
    if (!(r >= 1.0)) throw DomainError("holder sum: r must be >= 1");
    return log_holder_sum_any(M, n, r);
}

double holder_sum_exact(double M, Dimension n, double r) { return std::exp(log_holder_sum_exact(M, n, r)); }

double holder_sum_asymptotic(double M, Dimension n, double r) {
    if (!(M > 0.0)) throw DomainError("holder sum asymptotic: M must be > 0");
    if (!(r >= 1.0)) throw DomainError("holder sum asymptotic: r must be >= 1");
    double log_prod = 0.0;
    for (int k = 1; k <= n.value(); ++k) log_prod += std::log(r + k);
    return std::exp((n.value() + r) * std::log(M) - log_prod);
}

double holder_bracket(double M, Dimension n, double r, double mu) {
    if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("holder bracket: mu must lie in (0, 1]");
    if (!(r >= 1.0)) throw DomainError("holder bracket: r must be >= 1");
    const double nn = n.value();
    if (M == 0.0) return 1.0;
    const double norm = std::exp((std::log(mu) + log_holder_sum_exact(M, n, r)) / r);
    return (2.0 * M + nn - 2.0 * norm) / nn;
}

double holder_extremal_purity(double M, Dimension n, double r) {
    if (!(M > 0.0)) throw DomainError("extremal purity: M must be > 0");
    if (!(r > 1.0)) throw DomainError("extremal purity: r must be > 1");
    // mu = B_r^{r-1} / B_{r-1}^r
    const double log_mu = (r - 1.0) * log_holder_sum_any(M, n, r) - r * log_holder_sum_any(M, n, r - 1.0);
    return std::min(1.0, std::exp(log_mu));
}

GroupedSpectrum holder_extremal_family(const HolderParams& h, Dimension n) {
    if (!(h.M > 0.0)) throw DomainError("extremal family: M must be > 0");
    const double J = std::floor(h.M);
    if (J > 1e7) throw DomainError("extremal family: more than 10^7 levels");
    std::vector<double> log_w;
    for (double m = 0.0; m <= J; m += 1.0) {
        const double gap = h.M - m;
        if (gap <= 0.0) break;
        log_w.push_back(log_degeneracy(static_cast<LevelIndex>(m), n) + (h.r - 1.0) * std::log(gap));
    }
    const double peak = *std::max_element(log_w.begin(), log_w.end());
    detail::CompensatedSum total;
    std::vector<double> w(log_w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(log_w[i] - peak);
        total += w[i];
    }
    for (double& x : w) x /= total.value();
    return GroupedSpectrum(n, std::move(w));
}

}  // namespace uncbound
