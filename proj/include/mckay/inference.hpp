#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mckay/estimators.hpp"
#include "mckay/model.hpp"

namespace mckay {

/// Anything that maps a sample to an estimate. Replicates with converged == false are dropped.
using Estimator = std::function<EstimateResult(const BivariateSample&)>;

struct BootstrapConfig {
    std::size_t b = 2000;
    /// 1 gives the iid pairs bootstrap; 0 means ceil(n^(1/3)).
    std::size_t block_len = 0;
    std::uint64_t seed = 42;
};

struct BootstrapResult {
    std::array<double, 3> se{};
    /// Estimates of the converged replicates, in replicate order.
    std::vector<std::array<double, 3>> replicates;
    std::size_t dropped = 0;
    std::size_t block_len = 0;

    [[nodiscard]] std::size_t effective() const noexcept { return replicates.size(); }
};

/// ceil(n^(1/3))
[[nodiscard]] std::size_t default_block_length(std::size_t n);

/// One circular moving-block resample of length n.
[[nodiscard]] BivariateSample block_resample(const BivariateSample& sample, std::size_t block_len,
                                             std::uint64_t seed);

/// Replicate k resamples with seed substream_seed(cfg.seed, k). Output does not depend on jobs.
/// InsufficientReplicatesError when fewer than 10 replicates converge.
[[nodiscard]] BootstrapResult bootstrap_se(const BivariateSample& sample, const Estimator& estimator,
                                           const BootstrapConfig& cfg, std::size_t jobs = 1);

struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t b = 0;
};

/// sum_i (F_n(u1_i, u2_i) - u1_i u2_i)^2 with F_n the empirical joint CDF (<= at data points).
/// O(n log n); terms are summed in sorted order so the value is permutation invariant.
[[nodiscard]] double cvm_statistic(std::span<const UniformPair> pairs);

/// Statistic of b simulated sets of n iid Uniform(0,1)^2 pairs; set k uses substream_seed(seed, k).
[[nodiscard]] std::vector<double> cvm_null_distribution(std::size_t n, std::size_t b, std::uint64_t seed,
                                                        std::size_t jobs = 1);

/// (1 + #{null >= observed}) / (b + 1)
[[nodiscard]] double cvm_p_value(double observed, std::span<const double> null);

/// Requires every coordinate in [0, 1] and b >= 99.
[[nodiscard]] GofResult cvm_uniformity(std::span<const UniformPair> pairs, std::size_t b, std::uint64_t seed,
                                       std::size_t jobs = 1);

/// Rosenblatt transform under params followed by cvm_uniformity.
[[nodiscard]] GofResult gof_mckay(const BivariateSample& sample, const McKayParams& params, std::size_t b,
                                  std::uint64_t seed, std::size_t jobs = 1);

}  // namespace mckay
