#pragma once

// Independent numerical checks of the closed forms: constrained
// minimization over truncated grouped spectra, the rearrangement lemma with
// random unitaries, quadrature of the continuum Hoelder sum and the
// alternating-sum identity behind its Beta-function form.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uncbound/spectrum_bound.hpp"

namespace uncbound::oracle {

struct OracleConfig {
    std::uint64_t seed = 42;
    int trials = 20;             ///< Monte-Carlo trials, or optimizer starts
    std::size_t truncation = 0;  ///< highest level count K; 0 picks K by doubling
    double tolerance = 1e-5;

    /// Throws DomainError unless trials >= 1 and tolerance > 0.
    void validate() const;
};

/// Independent RNG stream for trial `index` of a seeded run.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
/// phases of R's diagonal moved into Q.
Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng);

/// Random probability vector sorted nonincreasing.
std::vector<double> random_sorted_probabilities(std::size_t dim, std::mt19937_64& rng);

struct LemmaReport {
    double lhs;
    double rhs;
    double margin;  ///< lhs - rhs, nonnegative by the lemma
};

/// lhs = sum_m lambda_m sum_k |U_mk|^2 gamma_k, rhs = sum_m lambda_m gamma_m.
LemmaReport lemma_margin(const Eigen::MatrixXcd& U, std::span<const double> lambda,
                         std::span<const double> gamma);

/// One seeded trial with gamma_k = 2k + 1.
LemmaReport lemma_trial(std::size_t dim, const OracleConfig& cfg, std::uint64_t trial);

/// gamma sorted ascending over all n-mode Fock states with total excitation
/// at most max_level, gamma = 2|m| + n.
std::vector<double> multimode_oscillator_levels(Dimension n, int max_level);

/// As lemma_trial with the degenerate multimode gamma.
LemmaReport lemma_trial_multimode(Dimension n, int max_level, const OracleConfig& cfg, std::uint64_t trial);

struct LemmaSummary {
    int trials = 0;
    int failures = 0;
    double worst_margin = 0.0;
};

/// Runs cfg.trials trials of `trial_fn` over up to `jobs` threads; each
/// trial uses its own stream, so the summary is independent of scheduling.
LemmaSummary lemma_suite(const std::function<LemmaReport(std::uint64_t)>& trial_fn, const OracleConfig& cfg,
                         double threshold, unsigned jobs = 1);

struct BruteForceResult {
    BoundResult bound;
    std::vector<double> xi;  ///< minimizing grouped weights
    double purity = 0.0;     ///< mu^(r) of xi after the feasibility polish
    std::size_t truncation = 0;
    double start_spread = 0.0;  ///< max - min objective over the starts
};

/// Minimizes (1/n) sum (2k + n) xi_k over truncated grouped spectra with
/// mu^(r)(xi) = mu. Root-finds the smallest energy E whose slice
/// {sum xi = 1, energy = E} reaches the purity, each slice minimized by
/// log-barrier Newton from cfg.trials seeded starts; the winner is mixed
/// toward the vacuum until |mu^(r) - mu| <= 1e-10.
/// With cfg.truncation == 0 the level count doubles from 16 until the top
/// quarter holds < 1e-7 of the weight.
/// Throws DomainError if mu is infeasible for the truncation and
/// SolverError if the optimizer stalls.
BruteForceResult brute_force_purity_bound(double mu, Dimension n, double r, const OracleConfig& cfg);

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to the given
/// relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol);

/// (1/(n-1)!) int_0^M m^{n-1} (M - m)^r dm by adaptive quadrature.
double quadrature_holder_sum(double M, Dimension n, double r);

struct IdentityCheck {
    double sum;
    double product;
    double relative_gap;
};

/// sum_{k=0}^{n-1} (-1)^k / [k! (n-1-k)! (k + r + 1)] against
/// 1 / prod_{k=1}^{n} (r + k). Requires 1 <= n <= 20 and 0 < r <= 50.
IdentityCheck alternating_sum_identity_check(int n, double r);

}  // namespace uncbound::oracle
