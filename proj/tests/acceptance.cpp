// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "uncbound/bounds.hpp"
#include "uncbound/oracle.hpp"
#include "uncbound/purity.hpp"

using namespace uncbound;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Verdict c1() {
    const double gap = std::fabs(asymptotic_C(Dimension{1}, 2.0) - 8.0 / 9.0);
    return {gap <= 1e-12, fmt("|C(1,2) - 8/9| = %.3g", gap)};
}

Verdict c2() {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const double ref = std::pow(2.0, n + 1) * factorial(n + 1) / std::pow(n + 2.0, n + 1);
        worst = std::max(worst, std::fabs(asymptotic_C(Dimension{n}, 2.0) - ref));
    }
    return {worst <= 1e-12, fmt("worst abs gap n=1..6: %.3g", worst)};
}

Verdict c3() {
    double worst = 0.0;
    for (double r : {1.0, 1.5, 2.0, 3.0, 10.0, 100.0})
        worst = std::max(worst, std::fabs(asymptotic_C(Dimension{1}, r) - 2.0 * std::pow(r / (r + 1.0), r)));
    return {worst <= 1e-12, fmt("worst abs gap: %.3g", worst)};
}

Verdict c4() {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
        worst = std::max(worst, rel(asymptotic_C(Dimension{n}, 1e6), std::pow(2.0 / std::numbers::e, n)));
    return {worst <= 1e-4, fmt("worst rel gap: %.3g", worst)};
}

Verdict c5() {
    const double mu = 1e-8;
    double lo = INFINITY, hi = -INFINITY;
    for (int n = 1; n <= 3; ++n)
        for (double r : {1.5, 2.0, 3.0, 10.0}) {
            const auto b = purity_bound(mu, Dimension{n}, PurityOrder::finite(r));
            const double ratio = mu * b.volume / asymptotic_C(Dimension{n}, r);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    return {lo >= 0.99 && hi <= 1.01, fmt("ratio range [%.6f, %.6f]", lo, hi)};
}

Verdict c6() {
    double end_gap = 0.0, asym_gap = 0.0;
    for (int n = 1; n <= 6; ++n) {
        end_gap = std::max(end_gap, std::fabs(interpolated_bound_r2(1.0, Dimension{n}).per_dim_product - 1.0));
        const auto b = interpolated_bound_r2(1e-8, Dimension{n});
        asym_gap = std::max(asym_gap, rel(1e-8 * b.volume, asymptotic_C(Dimension{n}, 2.0)));
    }
    return {end_gap <= 1e-9 && asym_gap <= 0.01, fmt("mu=1 gap %.3g, mu=1e-8 rel gap %.3g", end_gap, asym_gap)};
}

Verdict c7() {
    const double S = 30.0;
    double lo = INFINITY, hi = -INFINITY;
    for (int n = 1; n <= 4; ++n) {
        const auto b = entropy_bound(S, Dimension{n});
        const double ratio = b.volume / (std::exp(S) * std::pow(2.0 / std::numbers::e, n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo >= 0.99 && hi <= 1.01, fmt("ratio range [%.6f, %.6f]", lo, hi)};
}

Verdict c8() {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> pick_n(1, 3);
    std::uniform_real_distribution<double> pick_r(1.2, 5.0), pick_log_mu(std::log(0.01), std::log(0.9));
    oracle::OracleConfig cfg;
    cfg.seed = 20240601;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const int n = pick_n(rng);
        const double r = pick_r(rng), mu = std::exp(pick_log_mu(rng));
        const auto bf = oracle::brute_force_purity_bound(mu, Dimension{n}, r, cfg);
        const auto pb = purity_bound(mu, Dimension{n}, PurityOrder::finite(r));
        worst = std::max(worst, std::fabs(bf.bound.per_dim_product - pb.per_dim_product));
    }
    return {worst <= 1e-5, fmt("10 cases, worst abs gap %.3g", worst)};
}

Verdict c9() {
    oracle::OracleConfig cfg;
    cfg.seed = 42;
    cfg.trials = 1000;
    const auto s =
        oracle::lemma_suite([&](std::uint64_t i) { return oracle::lemma_trial(30, cfg, i); }, cfg, -1e-10, 0);
    std::vector<double> lambda{0.4, 0.3, 0.2, 0.1}, gamma{1.0, 3.0, 5.0, 7.0};
    const double id = oracle::lemma_margin(Eigen::MatrixXcd::Identity(4, 4), lambda, gamma).margin;
    const bool pass = s.trials == 1000 && s.failures == 0 && s.worst_margin >= -1e-10 && id == 0.0;
    return {pass, fmt("worst margin %.3g over %d trials, identity margin %.3g", s.worst_margin, s.trials, id)};
}

Verdict c10() {
    double id_gap = 0.0;
    for (int n = 1; n <= 10; ++n)
        for (double r : {1.5, 2.0, 2.5, 5.0})
            id_gap = std::max(id_gap, oracle::alternating_sum_identity_check(n, r).relative_gap);
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> pick_log_M(std::log(0.5), std::log(100.0)), pick_r(1.0, 10.0);
    std::uniform_int_distribution<int> pick_n(1, 6);
    double quad_gap = 0.0, uncorrected_min = INFINITY;
    for (int i = 0; i < 50; ++i) {
        const double M = std::exp(pick_log_M(rng)), r = pick_r(rng);
        const Dimension n{pick_n(rng)};
        const double quad = oracle::quadrature_holder_sum(M, n, r);
        const double closed = holder_sum_asymptotic(M, n, r);
        quad_gap = std::max(quad_gap, rel(quad, closed));
        uncorrected_min = std::min(uncorrected_min, rel(closed * M / (r + n.value() + 1.0), quad));
    }
    return {id_gap <= 1e-10 && quad_gap <= 1e-9,
            fmt("identity gap %.3g, quadrature rel gap %.3g, uncorrected form off by >= %.3g", id_gap, quad_gap,
                uncorrected_min)};
}

GroupedSpectrum random_grouped(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> levels(1, 12);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<std::size_t>(levels(rng)));
    double sum = 0.0;
    for (double& x : w) sum += (x = expo(rng));
    for (double& x : w) x /= sum;
    return GroupedSpectrum(Dimension{n}, w);
}

// Checked exactly as stated. The opposite ordering is counted alongside so the
// output shows which way the data actually goes.
Verdict c11() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pick_r(1.0 + 1e-3, 30.0);
    int violations = 0, reverse_violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto g = random_grouped(rng, 1 + i % 6);
        double r = pick_r(rng), q = pick_r(rng);
        if (r > q) std::swap(r, q);
        const double mr = purity_from_grouped(g, PurityOrder::finite(r));
        const double mq = purity_from_grouped(g, PurityOrder::finite(q));
        if (mr > mq + 1e-12) ++violations;
        if (mq > mr + 1e-12) ++reverse_violations;
    }
    return {violations == 0, fmt("%d/1000 violate mu(r) <= mu(q); %d/1000 violate mu(r) >= mu(q)", violations,
                                 reverse_violations)};
}

Verdict c12() {
    cli::CurveSpec spec;
    spec.quantity = cli::Quantity::asymptotic_C;
    spec.n_values = {1, 2, 3};
    spec.r = cli::parse_range("1:100:200:log");
    const auto rows = cli::evaluate_curve(spec, 0);
    bool in_r = true, in_n = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i % 200 != 0 && rows[i].value > rows[i - 1].value) in_r = false;
        if (i >= 200 && rows[i].value > rows[i - 200].value) in_n = false;
    }
    spec.r = cli::parse_range("1:1e6:50:log");
    const auto far = cli::evaluate_curve(spec, 0);
    double plateau = 0.0;
    for (int k = 0; k < 3; ++k)
        plateau = std::max(plateau, rel(far[50 * k + 49].value, std::pow(2.0 / std::numbers::e, k + 1)));
    const bool pass = rows.size() == 600 && in_r && in_n && plateau <= 1e-4;
    return {pass, fmt("%zu rows, nonincreasing in r: %s, in n: %s, plateau rel gap %.3g", rows.size(),
                      in_r ? "yes" : "no", in_n ? "yes" : "no", plateau)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"1d r=2 asymptote", c1},
        {"multidimensional r=2 family", c2},
        {"1d general r", c3},
        {"entropy limit", c4},
        {"numeric vs asymptotic at mu=1e-8", c5},
        {"interpolated relation endpoints", c6},
        {"entropy bound asymptote", c7},
        {"brute-force oracle agreement", c8},
        {"rearrangement lemma suite", c9},
        {"alternating-sum identity and quadrature", c10},
        {"purity monotonicity in r", c11},
        {"asymptotic-C curve shape", c12},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!v.pass) ++failed;
        std::printf("%s %2zu %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(),
                    secs);
    }
    std::printf("%d/%zu passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
