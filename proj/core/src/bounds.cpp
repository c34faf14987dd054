#include "uncbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "uncbound/detail/summation.hpp"

namespace uncbound {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxBisection = 200;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_mu(double mu, const char* who) {
    if (!(mu > 0.0 && mu <= 1.0)) throw DomainError(std::string(who) + ": mu must lie in (0, 1]");
}

double floor_at_one(double x) { return std::max(1.0, x); }

}  // namespace

// --- asymptotic closed forms ----------------------------------------------

double asymptotic_C(Dimension n, double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("asymptotic_C: r must be finite and >= 1");
    const double nn = n.value();
    // ln C = n ln 2 + r ln r + sum ln(r + k) - (n + r) ln(n + r), with the
    // large-r cancellation kept exact by writing ln(r + k) - ln(n + r) terms.
    detail::CompensatedSum log_c;
    log_c += nn * std::numbers::ln2;
    for (int k = 1; k <= n.value(); ++k) log_c += std::log1p((k - nn) / (nn + r));
    log_c += -r * std::log1p(nn / r);
    return std::exp(log_c.value());
}

double asymptotic_C_entropy_limit(Dimension n) { return std::pow(2.0 / std::numbers::e, n.value()); }

BoundResult purity_bound_asymptotic(double mu, Dimension n, double r) {
    check_mu(mu, "purity_bound_asymptotic");
    const double per_dim = std::exp((std::log(asymptotic_C(n, r)) - std::log(mu)) / n.value());
    auto b = make_bound(floor_at_one(per_dim), n, BoundMethod::asymptotic);
    return b;
}

// --- Hoelder supremum -----------------------------------------------------

namespace {

struct GoldenOutcome {
    double M;
    double value;
    double lo;
    double hi;
    int iterations;
};

GoldenOutcome maximize_bracket(Dimension n, double r, double mu) {
    auto f = [&](double M) { return holder_bracket(M, n, r, mu); };
    int evaluations = 0;

    // Expansion: the bracket is concave in M, so once it stops increasing
    // the maximum lies in [prev, next].
    double prev = 0.0, cur = 0.25;
    double f_prev = 1.0, f_cur = f(cur);
    ++evaluations;
    double next = 0.5, f_next = f(next);
    ++evaluations;
    int expansions = 0;
    while (f_next > f_cur) {
        prev = cur;
        f_prev = f_cur;
        cur = next;
        f_cur = f_next;
        next *= 2.0;
        f_next = f(next);
        ++evaluations;
        if (++expansions > 400 || !std::isfinite(f_next))
            throw SolverError("purity_bound: bracket expansion failed", evaluations, prev, next);
    }
    if (f_cur < f_prev) {
        // Maximum inside the first interval [0, 0.25].
        next = cur;
        cur = 0.125;
        prev = 0.0;
    }

    constexpr double inv_phi = 0.6180339887498948482;
    double a = prev, b = next;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    evaluations += 2;
    int it = 0;
    while ((b - a) > 1e-13 * std::max(1.0, b) && it < 400) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evaluations;
        ++it;
    }
    if (it >= 400) throw SolverError("purity_bound: golden-section did not converge", evaluations, a, b);
    const double M = fc >= fd ? c : d;
    return {M, std::max(fc, fd), prev, next, evaluations};
}

}  // namespace

BoundResult purity_bound(double mu, Dimension n, PurityOrder order) {
    check_mu(mu, "purity_bound");
    if (order.kind() == PurityOrder::Kind::entropy) return entropy_bound(-std::log(mu), n);
    const double r = order.kind() == PurityOrder::Kind::superpurity ? 1.0 : order.r();

    auto best = maximize_bracket(n, r, mu);
    double M = best.M;
    double value = best.value;
    double residual = 0.0;
    int iterations = best.iterations;

    if (r > 1.0 && M > 0.0) {
        // Polish: the bracket's derivative has the sign of mu'(M) - mu, where
        // mu'(M) is the purity of the extremal family at M (nonincreasing).
        auto gap = [&](double x) { return std::log(holder_extremal_purity(x, n, r)) - std::log(mu); };
        const double w = 1e-6 * std::max(1.0, M);
        double lo = std::max(best.lo, M - w), hi = std::min(best.hi, M + w);
        if (lo > 0.0 && gap(lo) >= 0.0 && gap(hi) <= 0.0) {
            for (int i = 0; i < kMaxBisection && hi - lo > 1e-15 * hi; ++i, ++iterations) {
                const double mid = 0.5 * (lo + hi);
                (gap(mid) >= 0.0 ? lo : hi) = mid;
            }
            const double cand = 0.5 * (lo + hi);
            const double f_cand = holder_bracket(cand, n, r, mu);
            // The bracket is flat at its peak; golden-section's best value
            // differs from this one only by rounding in 2M - 2(mu B)^{1/r}.
            if (f_cand >= value * (1.0 - 1e-12)) {
                M = cand;
                value = f_cand;
            }
        }
        residual = std::fabs(holder_extremal_purity(M, n, r) - mu) / mu;
    }

    auto b = make_bound(floor_at_one(value), n, BoundMethod::holder);
    b.aux = M;
    b.residual = residual;
    b.iterations = iterations;
    return b;
}

// --- interpolated r = 2 ---------------------------------------------------

double interpolated_purity(InterpParam p, Dimension n) {
    if (!(p.L > 0.0)) throw DomainError("interpolated purity: L must be > 0");
    const double nn = n.value();
    // Gamma(L) / Gamma(L + n + 1) as a finite product; the log_gamma
    // difference cancels badly once L is large.
    double log_mu = std::log(nn + 2.0 * p.L) + log_gamma(nn + 2.0) - std::log(nn + 2.0);
    for (int j = 0; j <= n.value(); ++j) log_mu -= std::log(p.L + j);
    return std::exp(log_mu);
}

BoundResult interpolated_bound_r2(double mu, Dimension n) {
    check_mu(mu, "interpolated_bound_r2");
    const double nn = n.value();
    const double target = std::log(mu);
    auto gap = [&](double L) { return std::log(interpolated_purity({L}, n)) - target; };

    double lo = 1.0, hi = 2.0;
    int it = 0;
    if (mu < 1.0) {
        while (gap(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (++it > 1100) throw SolverError("interpolated_bound_r2: no bracket", it, lo, hi);
        }
        for (int i = 0; i < kMaxBisection && hi - lo > kRelTol * 1e-1 * hi; ++i, ++it) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) > 0.0 ? lo : hi) = mid;
        }
    } else {
        hi = 1.0;
    }
    const double L = mu < 1.0 ? 0.5 * (lo + hi) : 1.0;
    const double residual = std::fabs(interpolated_purity({L}, n) - mu) / mu;
    if (residual > 1e-10)
        throw SolverError("interpolated_bound_r2: residual above 1e-10", it, lo, hi);
    auto b = make_bound(floor_at_one((nn + 2.0 * L) / (nn + 2.0)), n, BoundMethod::interpolated_r2);
    b.aux = L;
    b.residual = residual;
    b.iterations = it;
    return b;
}

// --- entropy-bounded relation ---------------------------------------------

namespace {

// Entropy of a single-mode thermal state.
double thermal_entropy_1d(double beta) {
    if (beta == kInf) return 0.0;
    return beta / std::expm1(beta) - std::log(-std::expm1(-beta));
}

constexpr double kMaxEntropyPerMode = 700.0;
constexpr std::size_t kCrossCheckLevels = 1u << 16;

}  // namespace

double thermal_entropy(double beta, Dimension n) {
    if (!(beta > 0.0)) throw DomainError("thermal_entropy: beta must be > 0");
    return n.value() * thermal_entropy_1d(beta);
}

ThermalParams thermal_beta_from_entropy(double S, Dimension n) {
    if (!(S >= 0.0) || !std::isfinite(S)) throw DomainError("thermal: entropy must be finite and >= 0");
    const double s = S / n.value();
    if (s > kMaxEntropyPerMode) throw DomainError("thermal: entropy per mode above 700 is outside double range");
    if (s == 0.0) return {kInf, 0.0};

    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while (thermal_entropy_1d(lo) < s) {
        lo *= 0.5;
        if (++guard > 2000) throw SolverError("thermal: no lower bracket", guard, lo, hi);
    }
    while (thermal_entropy_1d(hi) > s) {
        hi *= 2.0;
        if (++guard > 2000) throw SolverError("thermal: no upper bracket", guard, lo, hi);
    }
    // Geometric bisection; entropy is decreasing in beta.
    for (int i = 0; i < kMaxBisection && hi / lo - 1.0 > 1e-15; ++i) {
        const double mid = std::sqrt(lo * hi);
        (thermal_entropy_1d(mid) > s ? lo : hi) = mid;
    }
    const double beta = std::sqrt(lo * hi);
    return {beta, n.value() * std::log(-std::expm1(-beta))};
}

std::optional<GroupedSpectrum> thermal_grouped_spectrum(const ThermalParams& t, Dimension n,
                                                        std::size_t max_levels) {
    if (t.beta == kInf) return GroupedSpectrum(n, {1.0});
    std::vector<double> xi;
    const double mean_level = n.value() / std::expm1(t.beta);
    double log_g = 0.0;
    for (std::size_t k = 0;; ++k) {
        if (k >= max_levels) return std::nullopt;
        if (k > 0) log_g += std::log1p((n.value() - 1.0) / static_cast<double>(k));
        const double w = std::exp(log_g + t.log_normalization - t.beta * static_cast<double>(k));
        xi.push_back(w);
        // Past the mean the level ratio is below one and decreasing, so the
        // remaining tail is bounded by a geometric series.
        if (k > 0 && static_cast<double>(k) > mean_level) {
            const double ratio = (k + n.value()) / (k + 1.0) * std::exp(-t.beta);
            if (ratio < 1.0 && w * ratio / (1.0 - ratio) < 1e-17) break;
        }
    }
    return GroupedSpectrum(n, std::move(xi));
}

BoundResult entropy_bound(double S, Dimension n) {
    // Factorization: the n-mode minimizer is a product of single-mode thermal
    // states with entropy S / n each.
    const auto t = thermal_beta_from_entropy(S, n);
    const double per_dim = t.beta == kInf ? 1.0 : 1.0 / std::tanh(0.5 * t.beta);
    auto b = make_bound(floor_at_one(per_dim), n, BoundMethod::thermal);
    if (t.beta != kInf) b.aux = t.beta;
    if (auto g = thermal_grouped_spectrum(t, n, kCrossCheckLevels)) {
        const double via_grouped = bound_from_grouped(*g).per_dim_product;
        b.residual = std::fabs(via_grouped - per_dim) / per_dim;
        if (b.residual > 1e-9)
            throw SolverError("entropy_bound: thermal closed form and grouped sum disagree", 0, per_dim,
                              via_grouped);
    }
    return b;
}

BoundResult entropy_bound_asymptotic(double S, Dimension n) {
    if (!(S >= 0.0) || !std::isfinite(S)) throw DomainError("entropy bound: S must be finite and >= 0");
    const double per_dim = std::exp(S / n.value()) * 2.0 / std::numbers::e;
    return make_bound(floor_at_one(per_dim), n, BoundMethod::asymptotic);
}

}  // namespace uncbound
