#pragma once

namespace mckay {

/// Monotone map g: D -> (0, inf) applied to one margin in the Z-statistics.
/// Either the identity or g(t) = exp(rate * t) - 1.
class TransformG {
public:
    enum class Kind { kIdentity, kExpShift };

    static TransformG identity() noexcept { return TransformG(Kind::kIdentity, 0.0); }
    /// Throws DomainError unless rate is finite and > 0.
    static TransformG exp_shift(double rate);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double rate() const noexcept { return rate_; }

    [[nodiscard]] double forward(double t) const;
    [[nodiscard]] double inverse(double v) const;
    /// g'(t); NumericRangeError if it overflows.
    [[nodiscard]] double d1(double t) const;
    /// g''(t); NumericRangeError if it overflows.
    [[nodiscard]] double d2(double t) const;

private:
    TransformG(Kind kind, double rate) noexcept : kind_(kind), rate_(rate) {}

    Kind kind_;
    double rate_;
};

struct TransformPairG {
    TransformG g1;
    TransformG g2;

    static TransformPairG identity() noexcept { return {TransformG::identity(), TransformG::identity()}; }
    static TransformPairG exp_shift(double r, double s) { return {TransformG::exp_shift(r), TransformG::exp_shift(s)}; }
};

/// Monotone map l: D -> (0, 1) applied to the ratio X / Y.
/// Evaluations are expressed at t = l^{-1}(w), which is all the ratio statistics need.
class TransformL {
public:
    enum class Kind {
        kIdentity,     ///< l(t) = t on (0, 1)
        kOddsToUnit,   ///< l(t) = t / (t + 1) on (0, inf)
        kNegLogRatio,  ///< l(t) = -ln t / (1 - ln t) on (0, 1)
        kPower,        ///< l(t) = (1 - t^(1/s))^(1/r) on (0, 1)
    };

    static TransformL identity() noexcept { return TransformL(Kind::kIdentity, 1.0, 1.0); }
    static TransformL odds_to_unit() noexcept { return TransformL(Kind::kOddsToUnit, 1.0, 1.0); }
    static TransformL neg_log_ratio() noexcept { return TransformL(Kind::kNegLogRatio, 1.0, 1.0); }
    /// Throws DomainError unless r, s are finite and > 0.
    static TransformL power(double r, double s);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

    [[nodiscard]] double forward(double t) const;
    [[nodiscard]] double inverse(double w) const;
    /// l'(l^{-1}(w))
    [[nodiscard]] double d1_at_inverse(double w) const;
    /// l''(l^{-1}(w)) / l'(l^{-1}(w))
    [[nodiscard]] double curvature_at_inverse(double w) const;

    // Products that stay finite where the factors above overflow.
    /// ln l^{-1}(w)
    [[nodiscard]] double log_inverse(double w) const;
    /// l'(t) t at t = l^{-1}(w)
    [[nodiscard]] double d1_times_inverse(double w) const;
    /// l''(t) t / l'(t) at t = l^{-1}(w)
    [[nodiscard]] double curvature_times_inverse(double w) const;

private:
    TransformL(Kind kind, double r, double s) noexcept : kind_(kind), r_(r), s_(s) {}

    Kind kind_;
    double r_;
    double s_;
};

struct TransformPairL {
    TransformL l1;
    TransformL l2;
};

}  // namespace mckay
