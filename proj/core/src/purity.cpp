#include "uncbound/purity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uncbound/detail/summation.hpp"

namespace uncbound {

namespace {

void check_weights(std::span<const double> w, double tol, const char* what) {
    detail::CompensatedSum total;
    for (double x : w) {
        if (!std::isfinite(x) || x < 0.0)
            throw DomainError(std::string(what) + ": weights must be finite and nonnegative");
        total += x;
    }
    if (std::fabs(total.value() - 1.0) > tol)
        throw DomainError(std::string(what) + ": weights must sum to one");
}

// log of sum_k xi_k * theta_k^t, the power-mean kernel behind mu^(r).
// Each entry: (log xi_k, log theta_k). Entries with xi_k = 0 are omitted.
struct WeightedLog {
    double log_weight;
    double log_theta;
};

double log_power_moment(std::span<const WeightedLog> terms, double t) {
    double max_abs = 0.0;
    for (const auto& e : terms) max_abs = std::max(max_abs, std::fabs(e.log_theta));
    if (t * max_abs < 1e-3) {
        // sum xi (theta^t - 1) is small; keep it accurate through expm1/log1p.
        detail::CompensatedSum s;
        for (const auto& e : terms) s += std::exp(e.log_weight) * std::expm1(t * e.log_theta);
        return std::log1p(s.value());
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& e : terms) peak = std::max(peak, e.log_weight + t * e.log_theta);
    detail::CompensatedSum s;
    for (const auto& e : terms) s += std::exp(e.log_weight + t * e.log_theta - peak);
    return peak + std::log(s.value());
}

// mu^(r) = [sum xi theta^{1/(r-1)}]^{r-1}
double finite_purity(std::span<const WeightedLog> terms, double r) {
    const double t = 1.0 / (r - 1.0);
    return std::exp(log_power_moment(terms, t) / t);
}

double entropy_of(std::span<const WeightedLog> terms) {
    detail::CompensatedSum s;
    for (const auto& e : terms) s += -std::exp(e.log_weight) * e.log_theta;
    return std::max(0.0, s.value());
}

}  // namespace

Spectrum::Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
    if (values_.empty()) throw DomainError("spectrum: no eigenvalues");
    if (values_.size() > kMaxLength) throw DomainError("spectrum: more than 10^7 eigenvalues");
    check_weights(values_, kTraceTolerance, "spectrum");
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] > values_[i - 1] + kOrderTolerance)
            throw DomainError("spectrum: eigenvalues must be nonincreasing");
    }
    // Small disorder from rounding noise is repaired; stable keeps tie order.
    std::stable_sort(values_.begin(), values_.end(), std::greater<>());
}

GroupedSpectrum::GroupedSpectrum(Dimension n, std::vector<double> weights)
    : n_(n), weights_(std::move(weights)) {
    if (weights_.empty()) throw DomainError("grouped spectrum: no levels");
    check_weights(weights_, kTraceTolerance, "grouped spectrum");
    log_g_.reserve(weights_.size());
    for (std::size_t k = 0; k < weights_.size(); ++k) log_g_.push_back(log_degeneracy(k, n_));
}

double GroupedSpectrum::state_weight(std::size_t k) const {
    return weights_.at(k) * std::exp(-log_g_[k]);
}

PurityOrder PurityOrder::finite(double r) {
    if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("purity order: finite r must satisfy r > 1");
    return PurityOrder(Kind::finite, r);
}

double PurityOrder::r() const noexcept {
    return kind_ == Kind::entropy ? std::numeric_limits<double>::infinity() : r_;
}

namespace {

std::vector<WeightedLog> spectrum_terms(const Spectrum& s) {
    std::vector<WeightedLog> out;
    out.reserve(s.size());
    for (double x : s.eigenvalues())
        if (x > 0.0) out.push_back({std::log(x), std::log(x)});
    return out;
}

std::vector<WeightedLog> grouped_terms(const GroupedSpectrum& g) {
    std::vector<WeightedLog> out;
    out.reserve(g.levels());
    const auto w = g.weights();
    const auto lg = g.log_degeneracies();
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] > 0.0) out.push_back({std::log(w[k]), std::log(w[k]) - lg[k]});
    return out;
}

double purity_of(std::span<const WeightedLog> terms, PurityOrder order) {
    switch (order.kind()) {
        case PurityOrder::Kind::superpurity: {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& e : terms) best = std::max(best, e.log_theta);
            return std::exp(best);
        }
        case PurityOrder::Kind::entropy:
            return std::exp(-entropy_of(terms));
        case PurityOrder::Kind::finite:
            break;
    }
    return std::min(1.0, finite_purity(terms, order.r()));
}

}  // namespace

double purity_from_spectrum(const Spectrum& s, PurityOrder order) {
    return purity_of(spectrum_terms(s), order);
}

double purity_from_grouped(const GroupedSpectrum& g, PurityOrder order) {
    return purity_of(grouped_terms(g), order);
}

double entropy_from_grouped(const GroupedSpectrum& g) { return entropy_of(grouped_terms(g)); }

double entropy_from_spectrum(const Spectrum& s) { return entropy_of(spectrum_terms(s)); }

}  // namespace uncbound
