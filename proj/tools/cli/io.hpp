#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uncbound::cli {

/// Sweep grammar `min:max:points[:log]`; a bare number is a single point.
struct Range {
    double min = 0.0;
    double max = 0.0;
    int points = 1;
    bool log = false;

    /// Grid values ascending, endpoints exact.
    std::vector<double> values() const;
};

/// Throws DomainError on malformed input, min >= max, points < 2, or a log
/// range with min <= 0.
Range parse_range(std::string_view text);

/// Comma-separated positive integers, e.g. "1,2,3".
std::vector<int> parse_int_list(std::string_view text);

/// Comma-separated reals.
std::vector<double> parse_real_list(std::string_view text);

/// One nonnegative real per line; blank lines and lines starting with '#'
/// are skipped. The values are rescaled to unit sum when their total is
/// within 1e-6 of 1 and rejected otherwise. Any order is accepted; the
/// result is sorted nonincreasing.
std::vector<double> read_spectrum(std::istream& in);
std::vector<double> read_spectrum_file(const std::string& path);

struct OutputRecord {
    int n = 1;
    std::optional<double> r;
    std::optional<double> mu;
    std::optional<double> S;
    double value = 0.0;
    std::optional<double> volume;
    std::optional<double> aux;
    std::string method;
    double residual = 0.0;
    int iterations = 0;
};

enum class Format { csv, json };

/// 17 significant digits; empty for an absent or non-finite value.
std::string format_real(std::optional<double> v);

void write_records(std::ostream& out, std::span<const OutputRecord> records, Format format);

}  // namespace uncbound::cli
