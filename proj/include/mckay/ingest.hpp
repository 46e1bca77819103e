#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mckay/model.hpp"
#include "mckay/montecarlo.hpp"

namespace mckay {

/// Shortest decimal string that reads back to the same double.
[[nodiscard]] std::string format_double(double v);

/// Header line `x,y` then one `x,y` row per pair. Blank lines are ignored.
/// ParseError carries the 1-based line; support violations raise DomainError naming the row.
[[nodiscard]] BivariateSample read_pairs(std::istream& in);
[[nodiscard]] BivariateSample read_pairs(const std::filesystem::path& path);

void write_pairs(const BivariateSample& sample, std::ostream& out);
void write_pairs(const BivariateSample& sample, const std::filesystem::path& path);

/// One value per line; an optional non-numeric header line and `#` comments are skipped.
[[nodiscard]] std::vector<double> read_series(std::istream& in);
[[nodiscard]] std::vector<double> read_series(const std::filesystem::path& path);

/// (v[t], v[t] + v[t+1]) for consecutive, overlapping windows.
[[nodiscard]] BivariateSample rainfall_pairs(std::span<const double> series);

/// Los Angeles annual rainfall totals (inches), 119 consecutive seasons. Also shipped as data/la_rainfall.csv.
[[nodiscard]] std::span<const double> bundled_rainfall_series() noexcept;

/// Header `scenario,n,method,param,ab,mare,rmse,failures`; empty metric fields when all replicates failed.
void write_report(const MCReport& report, std::ostream& out);
void write_report(const MCReport& report, const std::filesystem::path& path);

/// Header `x,y,f`.
void write_density_grid(std::span<const GridPoint> grid, std::ostream& out);
void write_density_grid(std::span<const GridPoint> grid, const std::filesystem::path& path);

}  // namespace mckay
