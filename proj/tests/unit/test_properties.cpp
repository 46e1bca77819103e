#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mckay/estimators.hpp"
#include "mckay/montecarlo.hpp"
#include "mckay/rng.hpp"
#include "oracles.hpp"

using namespace mckay;

namespace {

const std::array<McKayParams, 4> kSets = study_parameter_sets();

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double ybar(const BivariateSample& s) {
    double t = 0;
    for (const auto& p : s) t += p.y;
    return t / s.size();
}

}  // namespace

TEST_CASE("density integrates to one for every scenario") {
    // x = v^5 and y - x = u^5 smooth out the power-law behaviour at both edges
    for (const auto& p : kSets) {
        CAPTURE(p.alpha());
        // truncate where both gamma tails are below 1e-8
        const double hi = std::pow((p.alpha() + p.beta() + 40.0) / p.gamma_rate(), 0.2);
        const double mass = oracle::simpson(
            [&](double v) {
                const double x = std::pow(v, 5);
                const double inner = oracle::simpson(
                    [&](double u) {
                        const double d = std::pow(u, 5);
                        return d > 0.0 && x > 0.0 ? std::exp(log_pdf(p, x, x + d)) * 5 * std::pow(u, 4) : 0.0;
                    },
                    0.0, hi, 1200);
                return inner * 5 * std::pow(v, 4);
            },
            0.0, hi, 1200);
        CHECK(std::abs(mass - 1.0) < 1e-3);
    }
}

TEST_CASE("scale behaviour of the scale-free estimators") {
    for (std::uint64_t k = 0; k < 8; ++k) {
        const auto s = sample_mckay(kSets[k % 4], 80, 1000 + k);
        for (double c : {0.01, 7.3, 1000.0}) {
            const auto t = s.scaled(c);
            const std::vector<std::pair<EstimateResult, EstimateResult>> cases = {
                {estimate_ml(s), estimate_ml(t)},
                {estimate_nawa(s), estimate_nawa(t)},
                {estimate_proposed2(s, 1.2, 0.7), estimate_proposed2(t, 1.2, 0.7)},
            };
            for (const auto& [a, b] : cases) {
                CAPTURE(to_string(a.method));
                CAPTURE(c);
                CHECK(rel(b.theta.alpha, a.theta.alpha) < 1e-12);
                CHECK(rel(b.theta.beta, a.theta.beta) < 1e-12);
                CHECK(rel(b.theta.gamma * c, a.theta.gamma) < 1e-12);
            }
        }
    }
}

TEST_CASE("every estimator ignores the order of pairs exactly") {
    std::mt19937 g(3);
    for (std::uint64_t k = 0; k < 8; ++k) {
        const auto s = sample_mckay(kSets[k % 4], 40, 2000 + k);
        std::vector<Pair> p(s.begin(), s.end());
        std::shuffle(p.begin(), p.end(), g);
        const BivariateSample t(std::move(p));
        for (Method m : {Method::kMl, Method::kZhao, Method::kNawa, Method::kProposed1, Method::kProposed2}) {
            try {
                const auto a = estimate(s, m).theta.as_array();
                CHECK(a == estimate(t, m).theta.as_array());
            } catch (const std::exception&) {
                CHECK_THROWS((void)estimate(t, m));
            }
        }
    }
}

TEST_CASE("generic and explicit routes agree on the simulated corpus") {
    const TransformPairL nawa_maps{TransformL::odds_to_unit(), TransformL::neg_log_ratio()};
    int checked = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const auto s = sample_mckay(kSets[k % 4], (k / 4) % 2 ? 100 : 20, 3000 + k);
        const auto zd = estimate_zhao(s).theta;
        const auto zg = estimate_from_z(summarize_z(s, TransformPairG::identity()));
        CHECK(std::abs(zd.alpha - zg.alpha) <= 1e-10);
        CHECK(std::abs(zd.beta - zg.beta) <= 1e-10);
        CHECK(std::abs(zd.gamma - zg.gamma) <= 1e-10);
        const auto nd = estimate_nawa(s).theta;
        const auto ng = estimate_from_u(summarize_u(s, nawa_maps), ybar(s));
        CHECK(std::abs(nd.alpha - ng.alpha) <= 1e-10);
        CHECK(std::abs(nd.beta - ng.beta) <= 1e-10);
        CHECK(std::abs(nd.gamma - ng.gamma) <= 1e-10);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("sampler support and determinism across parameter space") {
    Rng pick(5);
    for (int k = 0; k < 40; ++k) {
        const McKayParams p(0.05 + 5 * pick.uniform(), 0.05 + 5 * pick.uniform(), 0.01 + 10 * pick.uniform());
        const auto a = sample_mckay(p, 300, k);
        CHECK(a == sample_mckay(p, 300, k));
        for (const auto& [x, y] : a) {
            REQUIRE(x > 0.0);
            REQUIRE(y > x);
            REQUIRE(std::isfinite(y));
        }
    }
}

TEST_CASE("every estimator improves from n = 100 to n = 10000") {
    for (std::size_t si = 0; si < kSets.size(); ++si) {
        for (const auto& method : default_methods()) {
            CAPTURE(si);
            CAPTURE(method.name);
            std::array<MCReport, 2> reps;
            const std::array<std::size_t, 2> sizes = {100, 10000};
            for (std::size_t q = 0; q < 2; ++q) {
                Scenario sc;
                sc.id = si;
                sc.params = kSets[si];
                sc.n = sizes[q];
                sc.m = 50;
                sc.methods = {method};
                reps[q] = run_scenario(sc, 77);
            }
            for (std::size_t r = 0; r < 3; ++r) {
                REQUIRE(reps[0].rows[r].value);
                REQUIRE(reps[1].rows[r].value);
                CHECK(reps[1].rows[r].value->rmse < reps[0].rows[r].value->rmse);
            }
        }
    }
}
