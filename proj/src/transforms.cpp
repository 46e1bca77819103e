#include "mckay/transforms.hpp"

#include <cmath>
#include <string>

#include "mckay/errors.hpp"

namespace mckay {

namespace {
double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw NumericRangeError(std::string(what) + ": value outside double range");
    return v;
}
}  // namespace

TransformG TransformG::exp_shift(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("TransformG::exp_shift: rate must be > 0");
    return TransformG(Kind::kExpShift, rate);
}

double TransformG::forward(double t) const {
    if (kind_ == Kind::kIdentity) return t;
    return checked(std::expm1(rate_ * t), "exp_shift forward");
}

double TransformG::inverse(double v) const {
    if (kind_ == Kind::kIdentity) return v;
    if (!(v > -1.0)) throw DomainError("exp_shift inverse: argument must exceed -1");
    return std::log1p(v) / rate_;
}

double TransformG::d1(double t) const {
    if (kind_ == Kind::kIdentity) return 1.0;
    return checked(rate_ * std::exp(rate_ * t), "exp_shift derivative");
}

double TransformG::d2(double t) const {
    if (kind_ == Kind::kIdentity) return 0.0;
    return checked(rate_ * rate_ * std::exp(rate_ * t), "exp_shift second derivative");
}

TransformL TransformL::power(double r, double s) {
    if (!(r > 0.0) || !std::isfinite(r) || !(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("TransformL::power: r and s must be > 0");
    }
    return TransformL(Kind::kPower, r, s);
}

double TransformL::forward(double t) const {
    switch (kind_) {
        case Kind::kIdentity: return t;
        case Kind::kOddsToUnit: return t / (t + 1.0);
        case Kind::kNegLogRatio: {
            const double lt = std::log(t);
            return -lt / (1.0 - lt);
        }
        case Kind::kPower: return std::pow(-std::expm1(std::log(t) / s_), 1.0 / r_);
    }
    return t;
}

double TransformL::inverse(double w) const {
    switch (kind_) {
        case Kind::kIdentity: return w;
        case Kind::kOddsToUnit: return w / (1.0 - w);
        case Kind::kNegLogRatio: return std::exp(w / (w - 1.0));
        case Kind::kPower: return std::exp(s_ * std::log1p(-std::pow(w, r_)));
    }
    return w;
}

double TransformL::d1_at_inverse(double w) const {
    switch (kind_) {
        case Kind::kIdentity: return 1.0;
        case Kind::kOddsToUnit: return (w - 1.0) * (w - 1.0);
        case Kind::kNegLogRatio: return -(w - 1.0) * (w - 1.0) * std::exp(w / (1.0 - w));
        case Kind::kPower: {
            const double wr = std::pow(w, r_);
            return -std::pow(1.0 - wr, 1.0 - s_) * std::pow(w, 1.0 - r_) / (r_ * s_);
        }
    }
    return 1.0;
}

double TransformL::curvature_at_inverse(double w) const {
    switch (kind_) {
        case Kind::kIdentity: return 0.0;
        case Kind::kOddsToUnit: return 2.0 * (w - 1.0);
        case Kind::kNegLogRatio: return -(2.0 * w - 1.0) * std::exp(w / (1.0 - w));
        case Kind::kPower: {
            const double wr = std::pow(w, r_);
            return std::pow(1.0 - wr, -s_) / wr * (r_ - 1.0 + (1.0 - r_ * s_) * wr) / (r_ * s_);
        }
    }
    return 0.0;
}

double TransformL::log_inverse(double w) const {
    switch (kind_) {
        case Kind::kIdentity: return std::log(w);
        case Kind::kOddsToUnit: return std::log(w) - std::log1p(-w);
        case Kind::kNegLogRatio: return w / (w - 1.0);
        case Kind::kPower: return s_ * std::log1p(-std::pow(w, r_));
    }
    return std::log(w);
}

double TransformL::d1_times_inverse(double w) const {
    switch (kind_) {
        case Kind::kIdentity: return w;
        case Kind::kOddsToUnit: return w * (1.0 - w);
        case Kind::kNegLogRatio: return -(1.0 - w) * (1.0 - w);
        case Kind::kPower: return -(1.0 - std::pow(w, r_)) * std::pow(w, 1.0 - r_) / (r_ * s_);
    }
    return w;
}

double TransformL::curvature_times_inverse(double w) const {
    switch (kind_) {
        case Kind::kIdentity: return 0.0;
        case Kind::kOddsToUnit: return -2.0 * w;
        case Kind::kNegLogRatio: return 1.0 - 2.0 * w;
        case Kind::kPower: {
            const double wr = std::pow(w, r_);
            return (r_ - 1.0 + (1.0 - r_ * s_) * wr) / (wr * r_ * s_);
        }
    }
    return 0.0;
}

}  // namespace mckay
