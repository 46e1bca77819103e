#include "mckay/ingest.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "mckay/errors.hpp"

namespace mckay {

namespace {

constexpr std::array<double, 119> kRainfall = {
    20.86, 17.41, 18.65, 5.53,  10.74, 14.14, 40.29, 10.53, 16.72, 16.02, 20.82, 33.26, 12.69, 12.84, 18.72,
    21.96, 7.51,  12.55, 11.80, 14.28, 4.83,  8.69,  11.30, 11.96, 13.12, 14.77, 11.88, 19.19, 21.46, 15.30,
    13.74, 23.92, 4.89,  17.85, 9.78,  17.17, 23.21, 16.67, 23.29, 8.45,  17.49, 8.82,  11.18, 19.85, 15.27,
    6.25,  8.11,  8.94,  18.56, 18.63, 8.69,  8.32,  13.02, 18.93, 10.72, 18.76, 14.67, 14.49, 18.24, 17.97,
    27.16, 12.06, 20.26, 31.28, 7.40,  22.57, 17.45, 12.78, 16.22, 4.13,  7.59,  10.63, 7.38,  14.33, 24.95,
    4.08,  13.69, 11.89, 13.62, 13.24, 17.49, 6.23,  9.57,  5.83,  15.37, 12.31, 7.89,  26.81, 12.91, 23.66,
    7.58,  26.32, 16.54, 9.26,  6.54,  17.45, 16.69, 10.70, 11.01, 14.97, 30.57, 17.00, 26.33, 10.92, 14.41,
    34.04, 8.90,  8.92,  18.00, 9.11,  11.57, 4.56,  6.49,  15.07, 22.65, 23.44, 8.69,  24.06, 17.75,
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

template <class Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    fn(out);
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw NumericRangeError("format_double: conversion failed");
    return {buf.data(), ptr};
}

BivariateSample read_pairs(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<Pair> pairs;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty()) continue;
        if (!header) {
            if (t != "x,y") throw ParseError("expected header 'x,y'", lineno);
            header = true;
            continue;
        }
        const auto comma = t.find(',');
        Pair p{};
        if (comma == std::string_view::npos || !parse_double(t.substr(0, comma), p.x) ||
            !parse_double(t.substr(comma + 1), p.y)) {
            throw ParseError("malformed row '" + std::string(t) + "'", lineno);
        }
        pairs.push_back(p);
    }
    if (in.bad()) throw IoError("read failed");
    if (!header) throw ParseError("missing header 'x,y'", lineno + 1);
    if (pairs.empty()) throw ParseError("no data rows", lineno + 1);
    return BivariateSample(std::move(pairs));
}

BivariateSample read_pairs(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_pairs(in);
}

void write_pairs(const BivariateSample& sample, std::ostream& out) {
    out << "x,y\n";
    for (const auto& [x, y] : sample) out << format_double(x) << ',' << format_double(y) << '\n';
}

void write_pairs(const BivariateSample& sample, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_pairs(sample, out); });
}

std::vector<double> read_series(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool seen_content = false;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        double v = 0.0;
        if (!parse_double(t, v)) {
            if (!seen_content) {
                seen_content = true;  // header
                continue;
            }
            throw ParseError("malformed value '" + std::string(t) + "'", lineno);
        }
        seen_content = true;
        values.push_back(v);
    }
    if (in.bad()) throw IoError("read failed");
    return values;
}

std::vector<double> read_series(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_series(in);
}

BivariateSample rainfall_pairs(std::span<const double> series) {
    if (series.size() < 2) throw DomainError("rainfall_pairs: at least two values are required");
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!(series[i] > 0.0) || !std::isfinite(series[i])) {
            throw DomainError("rainfall_pairs: value " + std::to_string(i) + " is not positive");
        }
    }
    std::vector<Pair> pairs;
    pairs.reserve(series.size() - 1);
    for (std::size_t t = 0; t + 1 < series.size(); ++t) pairs.push_back({series[t], series[t] + series[t + 1]});
    return BivariateSample(std::move(pairs));
}

std::span<const double> bundled_rainfall_series() noexcept { return kRainfall; }

void write_report(const MCReport& report, std::ostream& out) {
    out << "scenario,n,method,param,ab,mare,rmse,failures\n";
    for (const auto& r : report.rows) {
        out << r.scenario << ',' << r.n << ',' << r.method << ',' << r.param << ',';
        if (r.value) {
            out << format_double(r.value->ab) << ',' << format_double(r.value->mare) << ','
                << format_double(r.value->rmse);
        } else {
            out << ",,";
        }
        out << ',' << r.failures << '\n';
    }
}

void write_report(const MCReport& report, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_report(report, out); });
}

void write_density_grid(std::span<const GridPoint> grid, std::ostream& out) {
    out << "x,y,f\n";
    for (const auto& g : grid) out << format_double(g.x) << ',' << format_double(g.y) << ',' << format_double(g.f) << '\n';
}

void write_density_grid(std::span<const GridPoint> grid, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_density_grid(grid, out); });
}

}  // namespace mckay
