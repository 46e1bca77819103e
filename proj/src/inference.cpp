#include "mckay/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "mckay/errors.hpp"
#include "mckay/rng.hpp"
#include "parallel.hpp"

namespace mckay {

std::size_t default_block_length(std::size_t n) {
    if (n == 0) throw DomainError("default_block_length: n must be >= 1");
    auto len = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n))));
    // guard against cbrt landing one ulp above an exact cube
    while (len > 1 && (len - 1) * (len - 1) * (len - 1) >= n) --len;
    return len;
}

BivariateSample block_resample(const BivariateSample& sample, std::size_t block_len, std::uint64_t seed) {
    const std::size_t n = sample.size();
    if (block_len == 0 || block_len > n) throw DomainError("block_resample: block length must be in [1, n]");
    Rng rng(seed);
    std::vector<Pair> out;
    out.reserve(n);
    while (out.size() < n) {
        const std::size_t start = rng.below(n);
        for (std::size_t k = 0; k < block_len && out.size() < n; ++k) out.push_back(sample[(start + k) % n]);
    }
    return BivariateSample(std::move(out));
}

BootstrapResult bootstrap_se(const BivariateSample& sample, const Estimator& estimator, const BootstrapConfig& cfg,
                             std::size_t jobs) {
    if (cfg.b == 0) throw DomainError("bootstrap_se: b must be >= 1");
    const std::size_t len = cfg.block_len == 0 ? default_block_length(sample.size()) : cfg.block_len;
    if (len > sample.size()) throw DomainError("bootstrap_se: block length exceeds n");

    std::vector<std::optional<std::array<double, 3>>> slots(cfg.b);
    detail::parallel_for(cfg.b, jobs, [&](std::size_t k) {
        const auto resample = block_resample(sample, len, substream_seed(cfg.seed, k));
        try {
            const auto res = estimator(resample);
            if (res.converged && res.theta.valid()) slots[k] = res.theta.as_array();
        } catch (const std::exception&) {
            // counted as dropped below
        }
    });

    BootstrapResult out;
    out.block_len = len;
    for (const auto& s : slots) {
        if (s) {
            out.replicates.push_back(*s);
        } else {
            ++out.dropped;
        }
    }
    if (out.replicates.size() < 10) {
        throw InsufficientReplicatesError("bootstrap_se: only " + std::to_string(out.replicates.size()) +
                                          " of " + std::to_string(cfg.b) + " replicates converged");
    }
    const auto m = static_cast<double>(out.replicates.size());
    for (std::size_t j = 0; j < 3; ++j) {
        double mean = 0.0;
        for (const auto& r : out.replicates) mean += r[j];
        mean /= m;
        double ss = 0.0;
        for (const auto& r : out.replicates) ss += (r[j] - mean) * (r[j] - mean);
        out.se[j] = std::sqrt(ss / (m - 1.0));
    }
    return out;
}

namespace {

class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t i) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
    }
    // count of inserted ranks <= i
    [[nodiscard]] std::size_t prefix(std::size_t i) const {
        std::size_t s = 0;
        for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::size_t> tree_;
};

}  // namespace

double cvm_statistic(std::span<const UniformPair> pairs) {
    const std::size_t n = pairs.size();
    if (n == 0) throw DomainError("cvm_statistic: no pairs");
    std::vector<UniformPair> sorted(pairs.begin(), pairs.end());
    std::sort(sorted.begin(), sorted.end(), [](const UniformPair& a, const UniformPair& b) {
        return a.u1 != b.u1 ? a.u1 < b.u1 : a.u2 < b.u2;
    });
    std::vector<double> v(n);
    std::transform(sorted.begin(), sorted.end(), v.begin(), [](const UniformPair& p) { return p.u2; });
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    const auto rank = [&](double u2) {
        return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), u2) - v.begin());
    };

    Fenwick fw(v.size());
    const auto nn = static_cast<double>(n);
    double stat = 0.0;
    std::size_t i = 0;
    while (i < n) {
        // points sharing u1 all count each other under the <= convention
        std::size_t j = i;
        while (j < n && sorted[j].u1 == sorted[i].u1) fw.add(rank(sorted[j++].u2));
        for (std::size_t k = i; k < j; ++k) {
            const double fhat = static_cast<double>(fw.prefix(rank(sorted[k].u2))) / nn;
            const double d = fhat - sorted[k].u1 * sorted[k].u2;
            stat += d * d;
        }
        i = j;
    }
    return stat;
}

std::vector<double> cvm_null_distribution(std::size_t n, std::size_t b, std::uint64_t seed, std::size_t jobs) {
    if (n == 0) throw DomainError("cvm_null_distribution: n must be >= 1");
    std::vector<double> out(b);
    detail::parallel_for(b, jobs, [&](std::size_t k) {
        Rng rng(substream_seed(seed, k));
        std::vector<UniformPair> sim(n);
        for (auto& p : sim) {
            p.u1 = rng.uniform();
            p.u2 = rng.uniform();
        }
        out[k] = cvm_statistic(sim);
    });
    return out;
}

double cvm_p_value(double observed, std::span<const double> null) {
    const auto exceed = std::count_if(null.begin(), null.end(), [&](double s) { return s >= observed; });
    return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(null.size()) + 1.0);
}

GofResult cvm_uniformity(std::span<const UniformPair> pairs, std::size_t b, std::uint64_t seed, std::size_t jobs) {
    if (b < 99) throw DomainError("cvm_uniformity: b must be >= 99");
    if (pairs.empty()) throw DomainError("cvm_uniformity: no pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        // 0 and 1 arise from rounding in the far tails of a misspecified fit
        if (!(p.u1 >= 0.0 && p.u1 <= 1.0 && p.u2 >= 0.0 && p.u2 <= 1.0)) {
            throw DomainError("cvm_uniformity: pair " + std::to_string(i) + " is not in [0,1]^2");
        }
    }
    GofResult res;
    res.statistic = cvm_statistic(pairs);
    res.b = b;
    res.p_value = cvm_p_value(res.statistic, cvm_null_distribution(pairs.size(), b, seed, jobs));
    return res;
}

GofResult gof_mckay(const BivariateSample& sample, const McKayParams& params, std::size_t b, std::uint64_t seed,
                    std::size_t jobs) {
    const auto u = rosenblatt(params, sample);
    return cvm_uniformity(u, b, seed, jobs);
}

}  // namespace mckay
