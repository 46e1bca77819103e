#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mckay {

/// (alpha, beta, gamma) of McKay's bivariate gamma law: shapes alpha, beta and a common rate gamma.
class McKayParams {
public:
    /// Throws DomainError unless all three are finite and > 0.
    McKayParams(double alpha, double beta, double gamma_rate);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double gamma_rate() const noexcept { return gamma_; }

    friend bool operator==(const McKayParams&, const McKayParams&) = default;

private:
    double alpha_;
    double beta_;
    double gamma_;
};

struct Pair {
    double x;
    double y;

    friend bool operator==(const Pair&, const Pair&) = default;
};

/// Non-empty ordered list of pairs with 0 < x < y, all finite.
class BivariateSample {
public:
    /// Throws DomainError identifying the first offending index.
    explicit BivariateSample(std::vector<Pair> pairs);

    [[nodiscard]] std::size_t size() const noexcept { return pairs_.size(); }
    [[nodiscard]] std::span<const Pair> pairs() const noexcept { return pairs_; }
    [[nodiscard]] const Pair& operator[](std::size_t i) const noexcept { return pairs_[i]; }
    [[nodiscard]] auto begin() const noexcept { return pairs_.begin(); }
    [[nodiscard]] auto end() const noexcept { return pairs_.end(); }

    /// Every coordinate multiplied by c > 0.
    [[nodiscard]] BivariateSample scaled(double c) const;

    friend bool operator==(const BivariateSample&, const BivariateSample&) = default;

private:
    std::vector<Pair> pairs_;
};

/// Sufficient statistics of the log-likelihood: n, sum ln x, sum ln(y - x), sum y.
struct LikelihoodSummary {
    std::size_t n = 0;
    double sum_log_x = 0.0;
    double sum_log_gap = 0.0;
    double sum_y = 0.0;

    static LikelihoodSummary of(const BivariateSample& sample);
};

/// ln f(x, y); -infinity outside y > x > 0.
[[nodiscard]] double log_pdf(const McKayParams& params, double x, double y) noexcept;

[[nodiscard]] double log_likelihood(const McKayParams& params, const BivariateSample& sample);
[[nodiscard]] double log_likelihood(const McKayParams& params, const LikelihoodSummary& summary);

/// n pairs via X = X1, Y = X1 + X2 with X1 ~ Gamma(alpha, gamma), X2 ~ Gamma(beta, gamma).
/// A draw whose sum rounds to X1 itself (X2 below half an ulp of X1) is redrawn.
[[nodiscard]] BivariateSample sample_mckay(const McKayParams& params, std::size_t n, std::uint64_t seed);

struct UniformPair {
    double u1;
    double u2;
};

/// (P(alpha, gamma x), P(beta, gamma (y - x))) per pair.
[[nodiscard]] std::vector<UniformPair> rosenblatt(const McKayParams& params, const BivariateSample& sample);

struct GridPoint {
    double x;
    double y;
    double f;
};

/// resolution^2 points at cell centres ((i + 0.5) / resolution) * max, x-major order.
[[nodiscard]] std::vector<GridPoint> density_grid(const McKayParams& params, double x_max, double y_max,
                                                  std::size_t resolution);

}  // namespace mckay
