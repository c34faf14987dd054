#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "uncbound/oracle.hpp"
#include "uncbound/spectrum_bound.hpp"

using namespace uncbound;

namespace {

std::vector<double> random_probabilities(std::mt19937_64& rng, std::size_t N) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(N);
    double s = 0.0;
    for (double& x : p) s += (x = expo(rng));
    for (double& x : p) x /= s;
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

// A Robin-Hood transfer moves mass from a larger entry to a smaller one
// without reversing their order; the result is majorized by the input.
std::vector<double> robin_hood(std::vector<double> p, std::mt19937_64& rng, int transfers) {
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int t = 0; t < transfers; ++t) {
        std::size_t i = pick(rng), j = pick(rng);
        if (p[i] < p[j]) std::swap(i, j);
        const double move = 0.5 * (p[i] - p[j]) * frac(rng);
        p[i] -= move;
        p[j] += move;
    }
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

}  // namespace

TEST_CASE("make_bound fills the volume") {
    const auto b = make_bound(1.5, Dimension{3}, BoundMethod::holder);
    CHECK(b.volume == doctest::Approx(3.375).epsilon(1e-15));
    CHECK(b.method == BoundMethod::holder);
    CHECK(to_string(BoundMethod::brute_force) == "brute-force");
}

TEST_CASE("group_spectrum examples") {
    {
        const Spectrum s({0.5, 0.3, 0.2});
        const auto g = group_spectrum(s, Dimension{1});
        REQUIRE(g.levels() == 3);
        for (std::size_t k = 0; k < 3; ++k) CHECK(g.weights()[k] == s[k]);
    }
    {
        const auto g = group_spectrum(Spectrum({1.0 / 3, 1.0 / 3, 1.0 / 3}), Dimension{2});
        REQUIRE(g.levels() == 2);
        CHECK(g.weights()[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
        CHECK(g.weights()[1] == doctest::Approx(2.0 / 3).epsilon(1e-15));
    }
    {
        const auto g = group_spectrum(Spectrum({0.5, 0.5}), Dimension{3});
        REQUIRE(g.levels() == 2);
        CHECK(g.weights()[0] == 0.5);
        CHECK(g.weights()[1] == 0.5);
    }
    {
        // trailing zero eigenvalues leave no empty levels behind
        const auto g = group_spectrum(Spectrum({1.0, 0.0, 0.0, 0.0, 0.0}), Dimension{2});
        CHECK(g.levels() == 1);
    }
}

TEST_CASE("bound_from_grouped examples") {
    for (int n : {1, 2, 5}) CHECK(bound_from_grouped(GroupedSpectrum(Dimension{n}, {1.0})).per_dim_product == 1.0);
    CHECK(bound_from_grouped(GroupedSpectrum(Dimension{1}, {0.5, 0.5})).per_dim_product == 2.0);
    const auto b = bound_from_grouped(GroupedSpectrum(Dimension{2}, {1.0 / 3, 2.0 / 3}));
    CHECK(b.per_dim_product == doctest::Approx(5.0 / 3).epsilon(1e-15));
    CHECK(b.volume == doctest::Approx(25.0 / 9).epsilon(1e-15));
}

TEST_CASE("bound_from_spectrum examples") {
    CHECK(bound_from_spectrum(Spectrum({1.0}), Dimension{4}).per_dim_product == 1.0);
    CHECK(bound_from_spectrum(Spectrum({0.5, 0.5}), Dimension{1}).per_dim_product == 2.0);
    const auto b = bound_from_spectrum(Spectrum({1.0 / 3, 1.0 / 3, 1.0 / 3}), Dimension{2});
    CHECK(b.per_dim_product == doctest::Approx(5.0 / 3).epsilon(1e-15));
    CHECK(b.method == BoundMethod::spectrum);
}

TEST_CASE("bound_from_spectrum equals the bound of its grouping") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const Dimension n{1 + i % 5};
        const Spectrum s(random_probabilities(rng, 1 + i % 60));
        CHECK(bound_from_spectrum(s, n).per_dim_product == bound_from_grouped(group_spectrum(s, n)).per_dim_product);
    }
}

TEST_CASE("majorization monotonicity") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<std::size_t> len(2, 50);
    for (int i = 0; i < 500; ++i) {
        const Dimension n{1 + i % 4};
        const auto a = random_probabilities(rng, len(rng));
        const auto b = robin_hood(a, rng, 1 + i % 7);
        CHECK(bound_from_spectrum(Spectrum(a), n).per_dim_product <=
              bound_from_spectrum(Spectrum(b), n).per_dim_product + 1e-12);
    }
}

TEST_CASE("bound is linear in the grouped weights") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Dimension n{1 + i % 6};
        auto w1 = random_probabilities(rng, 8), w2 = random_probabilities(rng, 8);
        std::shuffle(w2.begin(), w2.end(), rng);
        const double alpha = unit(rng);
        std::vector<double> mix(8);
        for (std::size_t k = 0; k < 8; ++k) mix[k] = alpha * w1[k] + (1.0 - alpha) * w2[k];
        const double lhs = bound_from_grouped(GroupedSpectrum(n, mix)).per_dim_product;
        const double rhs = alpha * bound_from_grouped(GroupedSpectrum(n, w1)).per_dim_product +
                           (1.0 - alpha) * bound_from_grouped(GroupedSpectrum(n, w2)).per_dim_product;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("every bound respects the pure-state floor") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 300; ++i) {
        const Dimension n{1 + i % 6};
        const Spectrum s(random_probabilities(rng, 1 + i % 30));
        CHECK(bound_from_spectrum(s, n).per_dim_product >= 1.0 - 1e-12);
    }
}

TEST_CASE("rearrangement: unitary mixing never lowers the energy") {
    oracle::OracleConfig cfg;
    cfg.seed = 25;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const std::size_t dim = 2 + t % 39;
        auto rng = oracle::trial_rng(cfg.seed, t);
        const auto U = oracle::random_unitary(dim, rng);
        const auto lambda = oracle::random_sorted_probabilities(dim, rng);
        std::vector<double> gamma(dim);
        for (std::size_t k = 0; k < dim; ++k) gamma[k] = 2.0 * k + 1.0;
        CHECK(oracle::lemma_margin(U, lambda, gamma).margin >= -1e-10);
    }
    const auto lambda = std::vector<double>{0.4, 0.3, 0.2, 0.1};
    const auto gamma = std::vector<double>{1, 3, 5, 7};
    CHECK(std::fabs(oracle::lemma_margin(Eigen::MatrixXcd::Identity(4, 4), lambda, gamma).margin) <= 1e-10);
}
