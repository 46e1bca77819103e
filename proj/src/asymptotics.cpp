#include "mckay/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mckay/errors.hpp"

namespace mckay {

std::array<double, 3> xi(const SummaryZ& z) { return estimate_from_z(z).as_array(); }

Matrix9 empirical_sigma_z(const BivariateSample& sample, const TransformPairG& g) {
    const std::size_t n = sample.size();
    if (n < 2) throw DomainError("empirical_sigma_z: at least 2 pairs are required");
    Eigen::Matrix<double, Eigen::Dynamic, 9> h(static_cast<Eigen::Index>(n), 9);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = h_vector(sample[i].x, sample[i].y, g);
        for (Eigen::Index k = 0; k < 9; ++k) h(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
    }
    const Eigen::Matrix<double, 1, 9> mean = h.colwise().mean();
    h.rowwise() -= mean;
    Matrix9 cov = (h.transpose() * h) / static_cast<double>(n - 1);
    // symmetrize away rounding in the product
    cov = 0.5 * (cov + cov.transpose()).eval();
    if (!cov.allFinite()) throw NumericRangeError("empirical_sigma_z: covariance outside double range");
    return cov;
}

Matrix39 jacobian_xi(const SummaryZ& z) { return jacobian_xi(z, 1e-5); }

Matrix39 jacobian_xi(const SummaryZ& z, double relative_step) {
    Matrix39 a;
    for (int k = 0; k < 9; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const double h = relative_step * std::max(1.0, std::abs(z.values[idx]));
        SummaryZ up = z;
        SummaryZ down = z;
        up.values[idx] += h;
        down.values[idx] -= h;
        std::array<double, 3> fu{}, fd{};
        try {
            fu = xi(up);
            fd = xi(down);
        } catch (const std::exception& e) {
            throw DifferentiationError("jacobian_xi: perturbation of z" + std::to_string(k + 1) +
                                       " is degenerate: " + e.what());
        }
        // the actual spacing, which can differ from 2h after rounding
        const double span = up.values[idx] - down.values[idx];
        for (int j = 0; j < 3; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            a(j, k) = (fu[jj] - fd[jj]) / span;
        }
    }
    if (!a.allFinite()) throw DifferentiationError("jacobian_xi: non-finite derivative");
    return a;
}

AsymptoticResult asymptotic_covariance(const BivariateSample& sample, const TransformPairG& g) {
    if (sample.size() < 10) throw DomainError("asymptotic_covariance: at least 10 pairs are required");
    const Matrix9 sigma = empirical_sigma_z(sample, g);
    const Matrix39 a = jacobian_xi(summarize_z(sample, g));
    AsymptoticResult res;
    res.cov = a * sigma * a.transpose();
    res.cov = 0.5 * (res.cov + res.cov.transpose()).eval();
    const auto n = static_cast<double>(sample.size());
    for (int j = 0; j < 3; ++j) res.se(j) = std::sqrt(std::max(0.0, res.cov(j, j)) / n);
    return res;
}

}  // namespace mckay
