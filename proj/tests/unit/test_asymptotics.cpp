#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mckay/asymptotics.hpp"
#include "mckay/errors.hpp"
#include "mckay/rng.hpp"
#include "mckay/specfun.hpp"
#include "oracles.hpp"

using namespace mckay;

namespace {

SummaryZ some_z() {
    return summarize_z(sample_mckay(McKayParams(2.5, 4.0, 0.6), 400, 17), TransformPairG::identity());
}

}  // namespace

TEST_CASE("xi reuses the estimator arithmetic") {
    for (std::uint64_t k = 0; k < 5; ++k) {
        const auto s = sample_mckay(McKayParams(1.7, 1.5, 1.1), 100, 40 + k);
        for (const auto& g : {TransformPairG::identity(), TransformPairG::exp_shift(0.4, 0.8)}) {
            const auto z = summarize_z(s, g);
            CHECK(xi(z) == estimate_from_z(z).as_array());
        }
    }
    auto z = some_z();
    const auto before = xi(z);
    z.values[0] *= 2.0;
    const auto after = xi(z);
    CHECK(after == estimate_from_z(z).as_array());
    CHECK(after[2] != doctest::Approx(before[2] / 2.0));
}

TEST_CASE("xi at Monte Carlo population means recovers the parameters") {
    const McKayParams p(2.5, 4.0, 0.6);
    const auto g = TransformPairG::identity();
    Rng rng(2718);
    std::array<double, 9> acc{};
    const std::size_t draws = 10000000;
    for (std::size_t i = 0; i < draws; ++i) {
        const double x = gamma_sample(p.alpha(), p.gamma_rate(), rng);
        const double y = x + gamma_sample(p.beta(), p.gamma_rate(), rng);
        const auto h = h_vector(x, y, g);
        for (std::size_t k = 0; k < 9; ++k) acc[k] += h[k];
    }
    SummaryZ z;
    for (std::size_t k = 0; k < 9; ++k) z.values[k] = acc[k] / draws;
    const auto t = xi(z);
    CHECK(std::abs(t[0] - 2.5) < 0.02);
    CHECK(std::abs(t[1] - 4.0) < 0.02);
    CHECK(std::abs(t[2] - 0.6) < 0.02);
}

TEST_CASE("empirical covariance of the h-vectors") {
    const BivariateSample two({{1, 2}, {2, 4}});
    const auto g = TransformPairG::identity();
    const auto sig = empirical_sigma_z(two, g);
    const auto ha = h_vector(1, 2, g);
    const auto hb = h_vector(2, 4, g);
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            const double expect = (ha[i] - hb[i]) * (ha[j] - hb[j]) / 2.0;
            CHECK(std::abs(sig(i, j) - expect) < 1e-14);
        }
    }

    const auto s = sample_mckay(McKayParams(1.7, 1.5, 1.1), 300, 5);
    for (const auto& tg : {TransformPairG::identity(), TransformPairG::exp_shift(0.3, 0.6)}) {
        const auto c = empirical_sigma_z(s, tg);
        CHECK((c - c.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        Eigen::SelfAdjointEigenSolver<Matrix9> eig(c);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * c.trace());
        for (int k = 0; k < 9; ++k) {
            std::vector<double> col;
            for (const auto& [x, y] : s) col.push_back(h_vector(x, y, tg)[k]);
            CHECK(std::abs(c(k, k) - oracle::variance(col)) <= 1e-10 * std::max(1.0, c(k, k)));
        }
    }
    CHECK_THROWS_AS((void)empirical_sigma_z(BivariateSample({{1, 2}}), g), DomainError);
}

TEST_CASE("jacobian of xi") {
    const auto z = some_z();
    const auto a = jacobian_xi(z);
    const auto half = jacobian_xi(z, 0.5e-5);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 9; ++k) {
            const double scale = std::max(std::abs(a(j, k)), 1e-3 * a.row(j).cwiseAbs().maxCoeff());
            CHECK(std::abs(a(j, k) - half(j, k)) <= 1e-5 * scale);
        }
    }
    for (int k = 1; k < 9; ++k) {
        CHECK(std::abs(a(2, k) - (a(0, k) + a(1, k)) / z.z(1)) < 1e-6);
    }
    const double den = (z.z(9) - z.z(1) * z.z(8)) * z.z(4) + z.z(5) * z.z(9);
    CHECK(std::abs(a(1, 6) - z.z(1) * z.z(4) / den) < 1e-6);

    SummaryZ flat = z;
    flat.values[3] = 0.0;
    CHECK_THROWS_AS((void)jacobian_xi(flat), DifferentiationError);
}

TEST_CASE("asymptotic covariance is a covariance") {
    const auto s = sample_mckay(McKayParams(2.5, 4.0, 0.6), 500, 23);
    const auto r = asymptotic_covariance(s, TransformPairG::identity());
    CHECK((r.cov - r.cov.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(r.cov);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * r.cov.trace());
    for (int j = 0; j < 3; ++j) {
        CHECK(r.se(j) > 0.0);
        CHECK(std::abs(r.se(j) - std::sqrt(r.cov(j, j) / 500)) < 1e-15);
    }
    CHECK_THROWS_AS((void)asymptotic_covariance(BivariateSample({{1, 2}, {2, 5}, {1, 4}}), TransformPairG::identity()),
                    DomainError);
}

// (2.5, 4.0, 0.6) has beta > 2, so E[h5^2] and E[h8^2] are finite and the
// delta-method limit applies.
TEST_CASE("delta-method SEs track the Monte Carlo spread of the Zhao estimator") {
    const McKayParams p(2.5, 4.0, 0.6);
    const std::size_t n = 5000, reps = 2000;
    std::array<std::vector<double>, 3> est;
    for (std::size_t j = 0; j < reps; ++j) {
        const auto r = estimate_zhao(sample_mckay(p, n, substream_seed(606, j)));
        for (std::size_t k = 0; k < 3; ++k) est[k].push_back(r.theta.as_array()[k]);
    }
    const auto se = asymptotic_covariance(sample_mckay(p, n, 999), TransformPairG::identity()).se;
    for (int k = 0; k < 3; ++k) {
        const double sd = std::sqrt(oracle::variance(est[k]));
        CAPTURE(k);
        CAPTURE(se(k));
        CAPTURE(sd);
        CHECK(std::abs(se(k) / sd - 1.0) < 0.15);
    }
}

TEST_CASE("standard errors shrink like one over root n") {
    const McKayParams p(2.5, 4.0, 0.6);
    const auto a = asymptotic_covariance(sample_mckay(p, 4000, 31), TransformPairG::identity()).se;
    const auto b = asymptotic_covariance(sample_mckay(p, 8000, 32), TransformPairG::identity()).se;
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(a(k) / b(k) / std::sqrt(2.0) - 1.0) < 0.25);
    }
}
