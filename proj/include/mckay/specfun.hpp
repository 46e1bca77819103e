#pragma once

#include "mckay/rng.hpp"

namespace mckay {

/// ln Gamma(x) for finite x > 0. Relative error below 1e-13 on [1e-6, 1e6].
double log_gamma(double x);

/// psi(x) = d/dx ln Gamma(x), x > 0.
double digamma(double x);

/// psi'(x), x > 0.
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
double reg_gamma_p(double a, double x);

/// One draw from Gamma(shape, rate), mean shape / rate (Marsaglia-Tsang).
double gamma_sample(double shape, double rate, Rng& rng);

}  // namespace mckay
