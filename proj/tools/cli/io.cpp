#include "cli/io.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "uncbound/detail/summation.hpp"
#include "uncbound/error.hpp"

namespace uncbound::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw DomainError(std::string(what) + ": not a number: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    for (std::size_t pos = 0;;) {
        const auto next = text.find(sep, pos);
        parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

}  // namespace

std::vector<double> Range::values() const {
    if (points == 1) return {min};
    std::vector<double> out(static_cast<std::size_t>(points));
    const double last = points - 1;
    for (int i = 0; i < points; ++i) {
        const double t = i / last;
        out[i] = log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
    }
    out.front() = min;
    out.back() = max;
    return out;
}

Range parse_range(std::string_view text) {
    const auto parts = split(trim(text), ':');
    Range r;
    if (parts.size() == 1) {
        r.min = r.max = parse_real(parts[0], "range");
        return r;
    }
    if (parts.size() != 3 && parts.size() != 4)
        throw DomainError("range must be min:max:points[:log], got '" + std::string(text) + "'");
    r.min = parse_real(parts[0], "range min");
    r.max = parse_real(parts[1], "range max");
    const auto pts = trim(parts[2]);
    const auto [ptr, ec] = std::from_chars(pts.data(), pts.data() + pts.size(), r.points);
    if (pts.empty() || ec != std::errc() || ptr != pts.data() + pts.size())
        throw DomainError("range points must be an integer, got '" + std::string(pts) + "'");
    if (parts.size() == 4) {
        if (trim(parts[3]) != "log") throw DomainError("range spacing must be 'log', got '" + std::string(parts[3]) + "'");
        r.log = true;
    }
    if (!(std::isfinite(r.min) && std::isfinite(r.max) && r.min < r.max)) throw DomainError("range needs min < max");
    if (r.points < 2) throw DomainError("range needs at least 2 points");
    if (r.log && !(r.min > 0.0)) throw DomainError("log range needs min > 0");
    return r;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    for (auto part : split(text, ',')) {
        part = trim(part);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || v < 1)
            throw DomainError("expected a positive integer, got '" + std::string(part) + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (auto part : split(text, ',')) out.push_back(parse_real(part, "list"));
    return out;
}

std::vector<double> read_spectrum(std::istream& in) {
    std::vector<double> values;
    detail::CompensatedSum total;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        double v = 0.0;
        try {
            v = parse_real(t, "spectrum");
        } catch (const DomainError&) {
            throw DomainError("spectrum line " + std::to_string(lineno) + ": not a number: '" + std::string(t) + "'");
        }
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError("spectrum line " + std::to_string(lineno) + ": eigenvalue must be finite and >= 0");
        values.push_back(v);
        total += v;
    }
    if (values.empty()) throw DomainError("spectrum: no eigenvalues");
    const double s = total.value();
    if (!(std::fabs(s - 1.0) <= 1e-6))
        throw DomainError("spectrum: eigenvalues sum to " + format_real(s) + ", not 1");
    if (s != 1.0)
        for (double& v : values) v /= s;
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

std::vector<double> read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open spectrum file '" + path + "'");
    return read_spectrum(in);
}

std::string format_real(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

namespace {

void write_csv(std::ostream& out, std::span<const OutputRecord> records) {
    out << "n,r,mu,S,value,volume,aux,method,residual,iterations\n";
    for (const auto& rec : records) {
        out << rec.n << ',' << format_real(rec.r) << ',' << format_real(rec.mu) << ',' << format_real(rec.S) << ','
            << format_real(rec.value) << ',' << format_real(rec.volume) << ',' << format_real(rec.aux) << ','
            << rec.method << ',' << format_real(rec.residual) << ',' << rec.iterations << '\n';
    }
}

std::string json_real(std::optional<double> v) {
    const auto s = format_real(v);
    return s.empty() ? "null" : s;
}

void write_json(std::ostream& out, std::span<const OutputRecord> records) {
    out << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        // method names are plain ASCII identifiers; no escaping needed
        out << "  {\"n\": " << rec.n << ", \"r\": " << json_real(rec.r) << ", \"mu\": " << json_real(rec.mu)
            << ", \"S\": " << json_real(rec.S) << ", \"value\": " << json_real(rec.value)
            << ", \"volume\": " << json_real(rec.volume) << ", \"aux\": " << json_real(rec.aux)
            << ", \"method\": \"" << rec.method << "\", \"residual\": " << json_real(rec.residual)
            << ", \"iterations\": " << rec.iterations << '}' << (i + 1 < records.size() ? "," : "") << '\n';
    }
    out << "]\n";
}

}  // namespace

void write_records(std::ostream& out, std::span<const OutputRecord> records, Format format) {
    if (format == Format::csv)
        write_csv(out, records);
    else
        write_json(out, records);
}

}  // namespace uncbound::cli
