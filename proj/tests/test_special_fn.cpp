#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "uncbound/special_fn.hpp"

using namespace uncbound;

namespace {

// Counts n-tuples of nonnegative integers summing to k by direct recursion.
std::uint64_t count_compositions(int k, int n) {
    if (n == 1) return 1;
    std::uint64_t total = 0;
    for (int first = 0; first <= k; ++first) total += count_compositions(k - first, n - 1);
    return total;
}

double log_factorial_sum(int m) {
    double s = 0.0;
    for (int i = 2; i <= m; ++i) s += std::log(static_cast<double>(i));
    return s;
}

}  // namespace

TEST_CASE("Dimension rejects non-positive values") {
    CHECK_THROWS_AS(Dimension{0}, DomainError);
    CHECK_THROWS_AS(Dimension{-3}, DomainError);
    CHECK(Dimension{7}.value() == 7);
}

TEST_CASE("degeneracy examples") {
    CHECK(degeneracy(0, Dimension{5}) == 1);
    for (LevelIndex m : {0ull, 1ull, 17ull, 1000000ull}) CHECK(degeneracy(m, Dimension{1}) == 1);
    CHECK(degeneracy(2, Dimension{3}) == 6);
}

TEST_CASE("degeneracy overflow is reported, not wrapped") {
    CHECK_THROWS_AS(degeneracy(1000, Dimension{60}), OverflowError);
    CHECK_THROWS_AS(degeneracy(1, Dimension{kMaxExactDimension + 1}), OverflowError);
    CHECK_NOTHROW(degeneracy(30, Dimension{30}));
}

TEST_CASE("Pascal recurrence over k, n <= 30") {
    for (int n = 2; n <= 30; ++n)
        for (LevelIndex k = 1; k <= 30; ++k)
            CHECK(degeneracy(k, Dimension{n}) == degeneracy(k - 1, Dimension{n}) + degeneracy(k, Dimension{n - 1}));
}

TEST_CASE("hockey-stick identity for k, n <= 20") {
    for (int n = 1; n <= 20; ++n) {
        std::uint64_t partial = 0;
        for (LevelIndex K = 0; K <= 20; ++K) {
            partial += degeneracy(K, Dimension{n});
            CHECK(partial == degeneracy(K, Dimension{n + 1}));
        }
    }
}

TEST_CASE("log_degeneracy matches enumerated compositions for k <= 12, n <= 5") {
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= 12; ++k) {
            const double expected = std::log(static_cast<double>(count_compositions(k, n)));
            CHECK(log_degeneracy(k, Dimension{n}) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(count_compositions(k, n) == degeneracy(k, Dimension{n}));
        }
}

TEST_CASE("log_degeneracy examples") {
    CHECK(log_degeneracy(0, Dimension{3}) == 0.0);
    CHECK(log_degeneracy(2, Dimension{3}) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
    // ln[(k+n-1)! / (k! (n-1)!)] by summed logs
    const double expected = log_factorial_sum(1005) - log_factorial_sum(1000) - log_factorial_sum(5);
    CHECK(log_degeneracy(1000, Dimension{6}) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log_degeneracy agrees with the exact path on a grid") {
    for (int n = 1; n <= 40; n += 3)
        for (LevelIndex k = 0; k <= 200; k += 7) {
            std::uint64_t g = 0;
            try {
                g = degeneracy(k, Dimension{n});
            } catch (const OverflowError&) {
                continue;
            }
            CHECK(log_degeneracy(k, Dimension{n}) == doctest::Approx(std::log(static_cast<double>(g))).epsilon(1e-12));
        }
}

TEST_CASE("log_degeneracy at very large level and dimension stays finite") {
    const double v = log_degeneracy(1000000, Dimension{200});
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    // ratio of neighbours: g_{k+1}/g_k = (k+n)/(k+1)
    const double ratio = log_degeneracy(1000001, Dimension{200}) - v;
    CHECK(ratio == doctest::Approx(std::log(1000200.0 / 1000001.0)).epsilon(1e-6));
}

TEST_CASE("log_gamma examples") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
    CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
}

TEST_CASE("log_gamma relative accuracy on [1e-3, 1e6] against the C library") {
    double worst = 0.0;
    for (double x = 1e-3; x <= 1e6; x *= 1.013) {
        const double ref = std::lgamma(x);
        // relative to max(1, |ref|): lnGamma has zeros at 1 and 2
        worst = std::max(worst, std::fabs(log_gamma(x) - ref) / std::max(1.0, std::fabs(ref)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("log_gamma recurrence on a log-spaced grid") {
    for (double x = 1e-3; x <= 1e6; x *= 1.37) {
        const double lhs = log_gamma(x + 1.0);
        const double rhs = std::log(x) + log_gamma(x);
        // same measure as the lgamma comparison
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(lhs)));
    }
}
