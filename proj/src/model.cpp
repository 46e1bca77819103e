#include "mckay/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mckay/errors.hpp"
#include "mckay/rng.hpp"
#include "mckay/specfun.hpp"

namespace mckay {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }
}  // namespace

McKayParams::McKayParams(double alpha, double beta, double gamma_rate)
    : alpha_(alpha), beta_(beta), gamma_(gamma_rate) {
    if (!positive_finite(alpha) || !positive_finite(beta) || !positive_finite(gamma_rate)) {
        throw DomainError("McKayParams: alpha, beta, gamma must be finite and > 0 (got " + std::to_string(alpha) +
                          ", " + std::to_string(beta) + ", " + std::to_string(gamma_rate) + ")");
    }
}

BivariateSample::BivariateSample(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) {
        throw DomainError("BivariateSample: at least one pair is required");
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const auto [x, y] = pairs_[i];
        if (!std::isfinite(x) || !std::isfinite(y) || !(x > 0.0) || !(x < y)) {
            throw DomainError("BivariateSample: pair " + std::to_string(i) + " violates 0 < x < y (x=" +
                              std::to_string(x) + ", y=" + std::to_string(y) + ")");
        }
    }
}

BivariateSample BivariateSample::scaled(double c) const {
    if (!positive_finite(c)) throw DomainError("BivariateSample::scaled: factor must be > 0");
    std::vector<Pair> out;
    out.reserve(pairs_.size());
    for (const auto& p : pairs_) out.push_back({c * p.x, c * p.y});
    return BivariateSample(std::move(out));
}

LikelihoodSummary LikelihoodSummary::of(const BivariateSample& sample) {
    LikelihoodSummary s;
    s.n = sample.size();
    for (const auto& [x, y] : sample) {
        s.sum_log_x += std::log(x);
        s.sum_log_gap += std::log(y - x);
        s.sum_y += y;
    }
    return s;
}

double log_pdf(const McKayParams& params, double x, double y) noexcept {
    if (!(x > 0.0) || !(y > x) || !std::isfinite(y)) return kNegInf;
    const double a = params.alpha();
    const double b = params.beta();
    const double g = params.gamma_rate();
    return (a + b) * std::log(g) - log_gamma(a) - log_gamma(b) + (a - 1.0) * std::log(x) +
           (b - 1.0) * std::log(y - x) - g * y;
}

double log_likelihood(const McKayParams& params, const BivariateSample& sample) {
    // Samples are valid by construction, so every term is finite.
    return log_likelihood(params, LikelihoodSummary::of(sample));
}

double log_likelihood(const McKayParams& params, const LikelihoodSummary& s) {
    if (s.n == 0) throw DomainError("log_likelihood: empty sample");
    const double a = params.alpha();
    const double b = params.beta();
    const double g = params.gamma_rate();
    const auto n = static_cast<double>(s.n);
    return n * ((a + b) * std::log(g) - log_gamma(a) - log_gamma(b)) + (a - 1.0) * s.sum_log_x +
           (b - 1.0) * s.sum_log_gap - g * s.sum_y;
}

BivariateSample sample_mckay(const McKayParams& params, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("sample_mckay: n must be >= 1");
    Rng rng(seed);
    std::vector<Pair> pairs;
    pairs.reserve(n);
    while (pairs.size() < n) {
        const double x1 = gamma_sample(params.alpha(), params.gamma_rate(), rng);
        const double x2 = gamma_sample(params.beta(), params.gamma_rate(), rng);
        const double y = x1 + x2;
        if (x1 > 0.0 && y > x1 && std::isfinite(y)) pairs.push_back({x1, y});
    }
    return BivariateSample(std::move(pairs));
}

std::vector<UniformPair> rosenblatt(const McKayParams& params, const BivariateSample& sample) {
    std::vector<UniformPair> out;
    out.reserve(sample.size());
    const double g = params.gamma_rate();
    for (const auto& [x, y] : sample) {
        out.push_back({reg_gamma_p(params.alpha(), g * x), reg_gamma_p(params.beta(), g * (y - x))});
    }
    return out;
}

std::vector<GridPoint> density_grid(const McKayParams& params, double x_max, double y_max, std::size_t resolution) {
    if (!positive_finite(x_max) || !positive_finite(y_max)) {
        throw DomainError("density_grid: x_max and y_max must be finite and > 0");
    }
    if (resolution < 2) throw DomainError("density_grid: resolution must be >= 2");
    std::vector<GridPoint> grid;
    grid.reserve(resolution * resolution);
    const auto res = static_cast<double>(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double x = (static_cast<double>(i) + 0.5) / res * x_max;
        for (std::size_t j = 0; j < resolution; ++j) {
            const double y = (static_cast<double>(j) + 0.5) / res * y_max;
            const double lp = log_pdf(params, x, y);
            grid.push_back({x, y, std::isinf(lp) ? 0.0 : std::exp(lp)});
        }
    }
    return grid;
}

}  // namespace mckay
