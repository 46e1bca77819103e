#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mckay/model.hpp"
#include "mckay/transforms.hpp"

namespace mckay {

enum class Method { kMl, kZhao, kNawa, kProposed1, kProposed2 };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
/// Accepts ml | zhao | nawa | proposed1 | proposed2; DomainError otherwise.
[[nodiscard]] Method method_from_string(std::string_view name);

/// Raw (alpha, beta, gamma) triple. Closed-form routes may return non-positive values.
struct Estimate {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    [[nodiscard]] bool valid() const noexcept;
    [[nodiscard]] std::array<double, 3> as_array() const noexcept { return {alpha, beta, gamma}; }
};

struct EstimateResult {
    Method method = Method::kMl;
    Estimate theta;
    std::optional<double> r;
    std::optional<double> s;
    /// -infinity when theta is not a valid parameter.
    double loglik = 0.0;
    /// Closed forms: theta is a valid parameter. ML: the score tolerance was met.
    bool converged = false;
    std::size_t iterations = 0;
    /// Profile search only: grid points that errored or gave invalid estimates.
    std::size_t skipped_grid_points = 0;

    /// Throws DomainError if theta is not a valid parameter.
    [[nodiscard]] McKayParams params() const;
};

// --- Z-statistics route -----------------------------------------------------

/// Means of h_1..h_9 over the sample. z(k) is 1-based.
struct SummaryZ {
    std::array<double, 9> values{};

    [[nodiscard]] double z(int k) const { return values[static_cast<std::size_t>(k - 1)]; }
};

/// (h_1, ..., h_9)(x, y) for the transform pair.
[[nodiscard]] std::array<double, 9> h_vector(double x, double y, const TransformPairG& g);

[[nodiscard]] SummaryZ summarize_z(const BivariateSample& sample, const TransformPairG& g);

/// beta from the combined p/q score equations, alpha from the p equation, gamma = (alpha + beta) / z1.
/// DegenerateStatisticsError when a denominator is below 1e-12 * max(1, |numerator|).
[[nodiscard]] Estimate estimate_from_z(const SummaryZ& z);

/// Explicit formulas of the identity-transform member, evaluated directly.
[[nodiscard]] EstimateResult estimate_zhao(const BivariateSample& sample);

/// Z-route with g1(x) = exp(r x) - 1, g2(y) = exp(s y) - 1.
[[nodiscard]] EstimateResult estimate_proposed1(const BivariateSample& sample, double r, double s);

// --- ratio (X / Y ~ Beta) route --------------------------------------------

/// Means of theta_{k,j}(X_i / Y_i), k = 1..5, j = 1..2. u(k, j) is 1-based.
struct SummaryU {
    std::array<std::array<double, 2>, 5> values{};

    [[nodiscard]] double u(int k, int j) const {
        return values[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
    }
};

[[nodiscard]] SummaryU summarize_u(const BivariateSample& sample, const TransformPairL& l);

/// alpha, beta from the two ratio score equations; gamma = [alpha (1 + U11/U21) + K] / z1.
[[nodiscard]] Estimate estimate_from_u(const SummaryU& u, double mean_y);

/// Explicit formulas of the odds/neg-log-ratio member, evaluated directly.
[[nodiscard]] EstimateResult estimate_nawa(const BivariateSample& sample);

/// Weight multiplying (r - 1 + (1 - r s) w^r) ln q inside the E statistic, where w = x / y and q = 1 - w^r.
enum class RatioWeight {
    /// q^s w^(2s - r). Reproduces the published rainfall estimates and (r, s) selections.
    kTabulated,
    /// w^(-r). The exact reduction of summarize_u with l1 = identity, l2 = power(r, s);
    /// consistent for every (r, s) and free of s.
    kScoreConsistent,
};

/// A..F ratio statistics.
struct SummaryRatio {
    double a = 0.0;  ///< mean ln(x/y)
    double b = 0.0;  ///< mean x/(y-x) ln(x/y)
    double c = 0.0;  ///< mean (y^r - x^r)/x^r ln q
    double d = 0.0;  ///< mean (y^r - x^r)/((y-x) x^(r-1)) ln q
    double e = 0.0;  ///< mean (r - 1 + (1 - r s) w^r) * weight * ln q
    double f = 0.0;  ///< mean ln q
    double r = 0.0;
    double s = 0.0;
};

[[nodiscard]] SummaryRatio ratio_statistics(const BivariateSample& sample, double r, double s,
                                            RatioWeight weight = RatioWeight::kTabulated);

[[nodiscard]] Estimate estimate_from_ratio(const SummaryRatio& stats, double mean_y);

[[nodiscard]] EstimateResult estimate_proposed2(const BivariateSample& sample, double r, double s,
                                                RatioWeight weight = RatioWeight::kTabulated);

// --- maximum likelihood ----------------------------------------------------

struct MlOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100;
};

/// Damped Newton on the gamma-profiled score system, started at the Nawa estimate.
/// converged is true iff max |score_k / n| <= tol.
[[nodiscard]] EstimateResult estimate_ml(const BivariateSample& sample, MlOptions options = {});

/// Score vector divided by n: (d/d alpha, d/d beta, d/d gamma) of the log-likelihood.
[[nodiscard]] std::array<double, 3> mean_score(const McKayParams& params, const BivariateSample& sample);

// --- profile selection -----------------------------------------------------

/// {0.1, 0.2, ..., 2.5}
[[nodiscard]] std::vector<double> default_profile_grid();

/// Evaluates the family on grid_r x grid_s and keeps the estimate with the largest log-likelihood.
/// Failing or invalid grid points are skipped and counted; ties go to the smallest (r, s).
/// NoValidEstimateError when nothing survives.
[[nodiscard]] EstimateResult profile_select(const BivariateSample& sample, Method family,
                                            std::span<const double> grid_r, std::span<const double> grid_s,
                                            RatioWeight weight = RatioWeight::kTabulated);

/// Dispatch by method; proposed families are profiled on the default grid.
[[nodiscard]] EstimateResult estimate(const BivariateSample& sample, Method method);

}  // namespace mckay
