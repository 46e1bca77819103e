#pragma once

#include <cstdint>

namespace mckay {

/// 64-bit finalizer from SplitMix64 (Stafford variant 13).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of substream `stream` under `base`:
///   mix64(base ^ mix64(stream + 0x9E3779B97F4A7C15)).
[[nodiscard]] constexpr std::uint64_t substream_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    return mix64(base ^ mix64(stream + 0x9E3779B97F4A7C15ULL));
}

/// Two-level substream, used for (scenario, replicate) style indexing.
[[nodiscard]] constexpr std::uint64_t substream_seed(std::uint64_t base, std::uint64_t outer,
                                                     std::uint64_t inner) noexcept {
    return substream_seed(substream_seed(base, outer), inner);
}

/// Counter-based generator: the k-th output is mix64(seed + k * 0x9E3779B97F4A7C15).
/// This is exactly the SplitMix64 stream, so it is identical on every platform.
/// Single-owner; derive independent streams with substream_seed instead of sharing.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Standard normal via the Marsaglia polar method.
    double normal() noexcept;

private:
    std::uint64_t state_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mckay
