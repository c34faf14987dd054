#pragma once

#include <cstdint>

#include "uncbound/error.hpp"

namespace uncbound {

/// Number of position/momentum pairs, n >= 1.
class Dimension {
public:
    explicit Dimension(int n) : n_(n) {
        if (n < 1) throw DomainError("dimension must be >= 1");
    }
    int value() const noexcept { return n_; }
    friend bool operator==(Dimension, Dimension) = default;

private:
    int n_;
};

/// Total Fock excitation number of a level (the norm of the vector index).
using LevelIndex = std::uint64_t;

/// Largest dimension for which degeneracy() attempts an exact result.
inline constexpr int kMaxExactDimension = 64;

/// Number of n-mode Fock states with total excitation k, (k+n-1)!/(k!(n-1)!).
/// Throws OverflowError if the value does not fit in 64 bits or n exceeds
/// kMaxExactDimension.
std::uint64_t degeneracy(LevelIndex k, Dimension n);

/// Natural log of degeneracy(k, n); always available.
double log_degeneracy(LevelIndex k, Dimension n);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

}  // namespace uncbound
