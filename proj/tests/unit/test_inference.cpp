#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mckay/errors.hpp"
#include "mckay/inference.hpp"
#include "mckay/ingest.hpp"
#include "mckay/rng.hpp"
#include "oracles.hpp"

using namespace mckay;

namespace {

BivariateSample indexed(std::size_t n) {
    // pair i is (i + 1, 2i + 3), so the source index is recoverable from x
    std::vector<Pair> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back({double(i + 1), double(2 * i + 3)});
    return BivariateSample(std::move(p));
}

std::size_t index_of(const Pair& p) { return static_cast<std::size_t>(p.x) - 1; }

EstimateResult constant_estimate(const BivariateSample&) {
    EstimateResult r;
    r.theta = {1.0, 2.0, 3.0};
    r.converged = true;
    return r;
}

std::vector<UniformPair> uniform_pairs(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<UniformPair> u(n);
    for (auto& p : u) p = {rng.uniform(), rng.uniform()};
    return u;
}

}  // namespace

TEST_CASE("default block length") {
    CHECK(default_block_length(118) == 5);
    CHECK(default_block_length(125) == 5);
    CHECK(default_block_length(126) == 6);
    CHECK(default_block_length(1) == 1);
    CHECK(default_block_length(8) == 2);
}

TEST_CASE("block length one is the iid pairs bootstrap") {
    const auto s = indexed(37);
    const auto r = block_resample(s, 1, 99);
    Rng rng(99);
    REQUIRE(r.size() == 37);
    for (const auto& p : r) CHECK(index_of(p) == rng.below(37));
}

TEST_CASE("moving blocks are circular, contiguous and of total length n") {
    const std::size_t n = 23, len = 5;
    const auto s = indexed(n);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto r = block_resample(s, len, seed);
        REQUIRE(r.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i % len != 0) CHECK(index_of(r[i]) == (index_of(r[i - 1]) + 1) % n);
        }
    }
    CHECK_THROWS_AS((void)block_resample(s, 0, 1), DomainError);
    CHECK_THROWS_AS((void)block_resample(s, n + 1, 1), DomainError);
}

TEST_CASE("block start indices are uniform") {
    const std::size_t n = 10;
    const auto s = indexed(n);
    std::vector<double> counts(n, 0.0);
    const std::size_t draws = 20000;
    for (std::uint64_t seed = 0; seed < draws; ++seed) counts[index_of(block_resample(s, n, seed)[0])] += 1.0;
    double chi2 = 0.0;
    const double e = double(draws) / n;
    for (double c : counts) chi2 += (c - e) * (c - e) / e;
    CHECK(chi2 < 27.88);  // 0.999 quantile of chi-square with 9 df
}

TEST_CASE("bootstrap determinism and parallel invariance") {
    const auto s = sample_mckay(McKayParams(1.7, 1.5, 1.1), 60, 3);
    const Estimator ml = [](const BivariateSample& x) { return estimate_ml(x); };
    const BootstrapConfig cfg{200, 4, 77};
    const auto a = bootstrap_se(s, ml, cfg, 1);
    const auto b = bootstrap_se(s, ml, cfg, 1);
    const auto c = bootstrap_se(s, ml, cfg, 3);
    CHECK(a.replicates == b.replicates);
    CHECK(a.replicates == c.replicates);
    CHECK(a.se == c.se);
    CHECK(a.block_len == 4);
    CHECK(a.effective() + a.dropped == 200);
    const auto d = bootstrap_se(s, ml, BootstrapConfig{200, 4, 78}, 1);
    CHECK_FALSE(a.replicates == d.replicates);
}

TEST_CASE("bootstrap SE of a constant estimator is zero") {
    const auto r = bootstrap_se(indexed(20), constant_estimate, BootstrapConfig{50, 3, 1});
    CHECK(r.se == std::array<double, 3>{0.0, 0.0, 0.0});
    CHECK(r.effective() == 50);
}

TEST_CASE("bootstrap needs ten converged replicates") {
    const Estimator never = [](const BivariateSample& s) {
        auto r = constant_estimate(s);
        r.converged = false;
        return r;
    };
    CHECK_THROWS_AS((void)bootstrap_se(indexed(20), never, BootstrapConfig{100, 1, 1}), InsufficientReplicatesError);
    const Estimator throws = [](const BivariateSample&) -> EstimateResult { throw DegenerateStatisticsError("x"); };
    CHECK_THROWS_AS((void)bootstrap_se(indexed(20), throws, BootstrapConfig{100, 1, 1}), InsufficientReplicatesError);
    CHECK_THROWS_AS((void)bootstrap_se(indexed(20), constant_estimate, BootstrapConfig{0, 1, 1}), DomainError);
}

TEST_CASE("rainfall ML moving-block bootstrap SEs") {
    const auto s = rainfall_pairs(bundled_rainfall_series());
    const Estimator ml = [](const BivariateSample& x) { return estimate_ml(x); };
    const auto r = bootstrap_se(s, ml, BootstrapConfig{2000, 5, 42});
    const std::array<double, 3> reference = {0.444643, 0.445945, 0.031943};
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r.se[k] / reference[k] - 1.0) < 0.2);
}

TEST_CASE("cvm statistic matches the quadratic-time definition") {
    for (std::size_t n : {1u, 2u, 7u, 100u, 333u}) {
        const auto u = uniform_pairs(n, n);
        CHECK(std::abs(cvm_statistic(u) - oracle::cvm_naive(u)) < 1e-12);
    }
    // ties in either coordinate
    std::vector<UniformPair> t = {{0.5, 0.5}, {0.5, 0.2}, {0.2, 0.5}, {0.5, 0.5}, {0.7, 0.2}, {0.1, 0.9}};
    CHECK(std::abs(cvm_statistic(t) - oracle::cvm_naive(t)) < 1e-14);
}

TEST_CASE("cvm statistic is exactly permutation invariant") {
    auto u = uniform_pairs(500, 8);
    const double s = cvm_statistic(u);
    std::mt19937 g(1);
    for (int k = 0; k < 5; ++k) {
        std::shuffle(u.begin(), u.end(), g);
        CHECK(cvm_statistic(u) == s);
    }
}

TEST_CASE("cvm p-values") {
    const std::vector<UniformPair> piled(50, UniformPair{0.5, 0.5});
    const auto r = cvm_uniformity(piled, 999, 1);
    CHECK(r.p_value <= 0.01);
    CHECK(r.p_value >= 1.0 / 1000.0);
    CHECK(r.b == 999);

    const std::vector<double> null = {1.0, 2.0, 3.0, 4.0};
    CHECK(cvm_p_value(2.5, null) == doctest::Approx(3.0 / 5.0));
    CHECK(cvm_p_value(0.0, null) == 1.0);
    CHECK(cvm_p_value(9.0, null) == doctest::Approx(1.0 / 5.0));

    const auto ok = uniform_pairs(30, 3);
    const auto a = cvm_uniformity(ok, 199, 5);
    CHECK(a.p_value == cvm_uniformity(ok, 199, 5, 4).p_value);
    CHECK(a.p_value >= 1.0 / 200.0);
    CHECK(a.p_value <= 1.0);

    CHECK_THROWS_AS((void)cvm_uniformity(ok, 98, 1), DomainError);
    std::vector<UniformPair> edge = ok;
    edge[3].u2 = 1.0;
    CHECK_NOTHROW((void)cvm_uniformity(edge, 199, 1));
    edge[3] = {0.0, 0.5};
    CHECK_NOTHROW((void)cvm_uniformity(edge, 199, 1));
    edge[3] = {0.5, 1.5};
    CHECK_THROWS_AS((void)cvm_uniformity(edge, 199, 1), DomainError);
    edge[3] = {std::nan(""), 0.5};
    CHECK_THROWS_AS((void)cvm_uniformity(edge, 199, 1), DomainError);
}

TEST_CASE("cvm test holds its level on uniform data") {
    const std::size_t n = 10000;
    const auto null = cvm_null_distribution(n, 999, 123);
    int rejections = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        if (cvm_p_value(cvm_statistic(uniform_pairs(n, 5000 + k)), null) <= 0.05) ++rejections;
    }
    CHECK(std::abs(rejections / 200.0 - 0.05) <= 0.04);
}

TEST_CASE("gof_mckay size and power") {
    const McKayParams p(1.7, 1.5, 1.1);
    const McKayParams wrong(1.7, 1.5, 11.0);
    int accepted = 0, rejected = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const auto s = sample_mckay(p, 200, 700 + k);
        if (gof_mckay(s, p, 199, k).p_value > 0.01) ++accepted;
        if (gof_mckay(s, wrong, 199, k).p_value <= 0.01) ++rejected;
    }
    CHECK(accepted >= 95);
    CHECK(rejected >= 95);
}

TEST_CASE("rainfall ML fit passes the goodness-of-fit test") {
    const auto s = rainfall_pairs(bundled_rainfall_series());
    const auto direct = cvm_uniformity(rosenblatt(McKayParams(4.814062, 4.808138, 0.3213364), s), 3000, 42);
    const auto piped = gof_mckay(s, McKayParams(4.814062, 4.808138, 0.3213364), 3000, 42);
    CHECK(direct.p_value == piped.p_value);
    CHECK(direct.p_value >= 0.5);
}
