#pragma once

#include <array>

#include <Eigen/Dense>

#include "mckay/estimators.hpp"
#include "mckay/model.hpp"
#include "mckay/transforms.hpp"

namespace mckay {

using Matrix9 = Eigen::Matrix<double, 9, 9>;
using Matrix39 = Eigen::Matrix<double, 3, 9>;

struct AsymptoticResult {
    /// Per-observation covariance A Sigma_Z A^T.
    Eigen::Matrix3d cov;
    /// sqrt(diag(cov) / n)
    Eigen::Vector3d se;
};

/// (xi1, xi2, xi3) at z; same arithmetic as estimate_from_z.
[[nodiscard]] std::array<double, 3> xi(const SummaryZ& z);

/// Sample covariance (denominator n - 1) of the h-vectors. Requires n >= 2.
[[nodiscard]] Matrix9 empirical_sigma_z(const BivariateSample& sample, const TransformPairG& g);

/// Central differences with step 1e-5 * max(1, |z_k|).
/// DifferentiationError if a perturbed point is degenerate.
[[nodiscard]] Matrix39 jacobian_xi(const SummaryZ& z);

/// Same, with an explicit relative step. Used to check step stability.
[[nodiscard]] Matrix39 jacobian_xi(const SummaryZ& z, double relative_step);

/// Requires n >= 10.
[[nodiscard]] AsymptoticResult asymptotic_covariance(const BivariateSample& sample, const TransformPairG& g);

}  // namespace mckay
