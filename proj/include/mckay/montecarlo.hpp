#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mckay/inference.hpp"
#include "mckay/model.hpp"

namespace mckay {

struct MethodSpec {
    std::string name;
    Estimator fn;
};

/// Proposed 1 and 2 profiled on the default grid, then ML, Zhao, Nawa.
[[nodiscard]] std::vector<MethodSpec> default_methods();
/// Subset of default_methods by name; DomainError on unknown names.
[[nodiscard]] std::vector<MethodSpec> methods_by_name(std::span<const std::string> names);

struct Scenario {
    /// Seed index: replicate j draws with substream_seed(base_seed, id, j).
    std::uint64_t id = 0;
    /// Written to the scenario column of the report.
    std::string label = "0";
    McKayParams params{1.0, 1.0, 1.0};
    std::size_t n = 100;
    std::size_t m = 1000;
    std::vector<MethodSpec> methods;
    /// Every simulated coordinate is multiplied by this; the truth becomes gamma / data_scale.
    double data_scale = 1.0;
};

struct ParamMetrics {
    double ab = 0.0;
    double mare = 0.0;
    double rmse = 0.0;
};

/// AB = |mean - theta|, MARE = mean |est - theta| / theta, RMSE = sqrt(mean (est - theta)^2), per parameter.
[[nodiscard]] std::array<ParamMetrics, 3> metrics(std::span<const std::array<double, 3>> estimates,
                                                  const McKayParams& truth);

inline constexpr std::array<const char*, 3> kParamNames = {"alpha", "beta", "gamma"};

struct MCRow {
    std::string scenario;
    std::size_t n = 0;
    std::string method;
    std::string param;
    /// Empty when every replicate failed.
    std::optional<ParamMetrics> value;
    std::size_t failures = 0;
};

struct MCReport {
    std::vector<MCRow> rows;

    /// nullptr if absent.
    [[nodiscard]] const MCRow* find(std::string_view scenario, std::size_t n, std::string_view method,
                                    std::string_view param) const;
};

/// Three rows (alpha, beta, gamma) per method. Output does not depend on jobs.
[[nodiscard]] MCReport run_scenario(const Scenario& s, std::uint64_t base_seed, std::size_t jobs = 1);

/// The four parameter sets of the comparison study, labelled 1..4.
[[nodiscard]] std::array<McKayParams, 4> study_parameter_sets();

/// 4 parameter sets x n in {20, 50, 100} x default_methods(); 180 rows.
[[nodiscard]] std::vector<Scenario> study_scenarios(std::size_t m = 1000);
[[nodiscard]] MCReport run_study_suite(std::uint64_t base_seed, std::size_t m = 1000, std::size_t jobs = 1);

/// Human-readable tables: one block per scenario, rows method x param, columns AB/MARE/RMSE per n.
[[nodiscard]] std::string render_tables(const MCReport& report);

}  // namespace mckay
