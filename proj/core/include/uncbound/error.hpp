#pragma once

#include <stdexcept>
#include <string>

namespace uncbound {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An exact fixed-width integer result would not fit; use the log-space path.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// An iterative solver failed to bracket or converge.
class SolverError : public Error {
public:
    SolverError(const std::string& what, int iterations, double lo, double hi)
        : Error(what), iterations_(iterations), lo_(lo), hi_(hi) {}

    int iterations() const noexcept { return iterations_; }
    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    int iterations_;
    double lo_;
    double hi_;
};

}  // namespace uncbound
