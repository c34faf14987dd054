#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/io.hpp"

namespace uncbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;

enum class Quantity { asymptotic_C, purity_bound, entropy_bound, interpolated_r2 };

struct CurveSpec {
    Quantity quantity = Quantity::asymptotic_C;
    std::vector<int> n_values;
    std::optional<Range> r;
    std::optional<Range> mu;
    std::optional<Range> S;

    /// Checks that exactly the ranges the quantity needs are present.
    void validate() const;
};

/// One record per grid point, ordered by n, then r, then mu or S, all
/// ascending. Points are evaluated on up to `jobs` threads (0: one per core).
std::vector<OutputRecord> evaluate_curve(const CurveSpec& spec, unsigned jobs);

/// Entry point behind the `uncbound` executable; `args` excludes the
/// program name. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uncbound::cli
