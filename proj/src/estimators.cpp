#include "mckay/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mckay/errors.hpp"
#include "mckay/specfun.hpp"

namespace mckay {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double guarded_div(double num, double den, const char* what) {
    if (!std::isfinite(num) || !std::isfinite(den) || std::abs(den) < 1e-12 * std::max(1.0, std::abs(num))) {
        throw DegenerateStatisticsError(std::string(what) + ": denominator is numerically zero");
    }
    return num / den;
}

void require_min_size(const BivariateSample& sample, const char* who) {
    if (sample.size() < 2) throw DomainError(std::string(who) + ": at least two pairs are required");
}

// Statistics are accumulated over pairs in sorted order, which makes every
// estimator exactly invariant to the order of the input pairs.
BivariateSample canonical(const BivariateSample& sample) {
    const auto less = [](const Pair& a, const Pair& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; };
    std::vector<Pair> pairs(sample.begin(), sample.end());
    if (!std::is_sorted(pairs.begin(), pairs.end(), less)) std::sort(pairs.begin(), pairs.end(), less);
    return BivariateSample(std::move(pairs));
}

double mean_y(const BivariateSample& sample) {
    double s = 0.0;
    for (const auto& p : sample) s += p.y;
    return s / static_cast<double>(sample.size());
}

EstimateResult finalize(Method method, const Estimate& theta, const LikelihoodSummary& summary) {
    EstimateResult res;
    res.method = method;
    res.theta = theta;
    res.converged = theta.valid();
    res.loglik = res.converged ? log_likelihood(McKayParams(theta.alpha, theta.beta, theta.gamma), summary) : kNegInf;
    return res;
}

// h_2..h_5 for one pair, written to out[0..3].
void h_first(double x, double y, const TransformG& g, double* out) {
    const double t = g.inverse(x);
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("summarize_z: g1^{-1}(x) must be positive");
    const double lt = std::log(t);
    const double d1 = g.d1(t);
    const double core = d1 * t * lt;
    out[0] = lt;
    out[1] = g.d2(t) / d1 * t * lt;
    out[2] = core / x;
    out[3] = core / (y - x);
}

// h_6..h_9 for one pair, written to out[0..3].
void h_second(double x, double y, const TransformG& g, double* out) {
    const double t = g.inverse(y);
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("summarize_z: g2^{-1}(y) must be positive");
    const double lt = std::log(t);
    const double d1 = g.d1(t);
    const double core = d1 * t * lt;
    out[0] = lt;
    out[1] = g.d2(t) / d1 * t * lt;
    out[2] = core / (y - x);
    out[3] = core;
}

using Half = std::array<double, 4>;

template <class Fn>
Half half_means(const BivariateSample& sample, const TransformG& g, Fn fn) {
    Half acc{};
    Half h{};
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto [x, y] = sample[i];
        try {
            fn(x, y, g, h.data());
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " at pair " + std::to_string(i));
        }
        for (std::size_t k = 0; k < 4; ++k) acc[k] += h[k];
    }
    for (auto& v : acc) v /= static_cast<double>(sample.size());
    for (double v : acc) {
        if (!std::isfinite(v)) throw NumericRangeError("summarize_z: statistic outside double range");
    }
    return acc;
}

Half first_half(const BivariateSample& s, const TransformG& g) { return half_means(s, g, h_first); }
Half second_half(const BivariateSample& s, const TransformG& g) { return half_means(s, g, h_second); }

SummaryZ assemble_z(double z1, const Half& first, const Half& second) {
    SummaryZ z;
    z.values[0] = z1;
    std::copy(first.begin(), first.end(), z.values.begin() + 1);
    std::copy(second.begin(), second.end(), z.values.begin() + 5);
    return z;
}

// Per-r ratio quantities shared by every s.
class RatioPass {
public:
    RatioPass(const BivariateSample& sample, double r) : r_(r) {
        if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ratio_statistics: r must be > 0");
        const std::size_t n = sample.size();
        log_w_.resize(n);
        w_r_.resize(n);
        log_q_.resize(n);
        double a = 0.0, b = 0.0, c = 0.0, d = 0.0, f = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto [x, y] = sample[i];
            const double lw = std::log(x / y);
            const double wr = std::exp(r * lw);
            const double lq = std::log1p(-wr);
            const double odds_gap = x / (y - x);
            const double inv_wr_m1 = std::expm1(-r * lw);  // (y^r - x^r) / x^r
            log_w_[i] = lw;
            w_r_[i] = wr;
            log_q_[i] = lq;
            a += lw;
            b += odds_gap * lw;
            c += inv_wr_m1 * lq;
            d += inv_wr_m1 * odds_gap * lq;
            f += lq;
        }
        const auto nn = static_cast<double>(n);
        a_ = a / nn;
        b_ = b / nn;
        c_ = c / nn;
        d_ = d / nn;
        f_ = f / nn;
    }

    [[nodiscard]] SummaryRatio stats(double s, RatioWeight weight) const {
        if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("ratio_statistics: s must be > 0");
        const double r = r_;
        double e = 0.0;
        for (std::size_t i = 0; i < log_w_.size(); ++i) {
            const double lead = r - 1.0 + (1.0 - r * s) * w_r_[i];
            const double log_weight =
                weight == RatioWeight::kTabulated ? s * log_q_[i] + (2.0 * s - r) * log_w_[i] : -r * log_w_[i];
            e += lead * std::exp(log_weight) * log_q_[i];
        }
        SummaryRatio out{a_, b_, c_, d_, e / static_cast<double>(log_w_.size()), f_, r, s};
        for (double v : {out.a, out.b, out.c, out.d, out.e, out.f}) {
            if (!std::isfinite(v)) throw NumericRangeError("ratio_statistics: statistic outside double range");
        }
        return out;
    }

private:
    double r_;
    std::vector<double> log_w_;
    std::vector<double> w_r_;
    std::vector<double> log_q_;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0, d_ = 0.0, f_ = 0.0;
};

std::vector<double> normalized_grid(std::span<const double> grid, const char* name) {
    if (grid.empty()) throw DomainError(std::string("profile_select: ") + name + " grid is empty");
    std::vector<double> out(grid.begin(), grid.end());
    for (double v : out) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string("profile_select: ") + name + " grid entries must be > 0");
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::kMl: return "ml";
        case Method::kZhao: return "zhao";
        case Method::kNawa: return "nawa";
        case Method::kProposed1: return "proposed1";
        case Method::kProposed2: return "proposed2";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    for (Method m : {Method::kMl, Method::kZhao, Method::kNawa, Method::kProposed1, Method::kProposed2}) {
        if (to_string(m) == name) return m;
    }
    throw DomainError("unknown method '" + std::string(name) + "'");
}

bool Estimate::valid() const noexcept {
    return alpha > 0.0 && beta > 0.0 && gamma > 0.0 && std::isfinite(alpha) && std::isfinite(beta) &&
           std::isfinite(gamma);
}

McKayParams EstimateResult::params() const { return McKayParams(theta.alpha, theta.beta, theta.gamma); }

// --- Z route -----------------------------------------------------------------

std::array<double, 9> h_vector(double x, double y, const TransformPairG& g) {
    std::array<double, 9> h{};
    h[0] = y;
    h_first(x, y, g.g1, &h[1]);
    h_second(x, y, g.g2, &h[5]);
    return h;
}

SummaryZ summarize_z(const BivariateSample& input, const TransformPairG& g) {
    const auto sample = canonical(input);
    return assemble_z(mean_y(sample), first_half(sample, g.g1), second_half(sample, g.g2));
}

Estimate estimate_from_z(const SummaryZ& zs) {
    const auto z = [&](int k) { return zs.z(k); };
    if (!(z(1) > 0.0)) throw DomainError("estimate_from_z: z1 must be positive");
    const double beta_num = (1.0 + z(2) + z(3) - z(4) + z(5)) * z(9) + (1.0 + z(6) + z(7) - z(8)) * z(1) * z(4);
    const double beta_den = (z(9) - z(1) * z(8)) * z(4) + z(5) * z(9);
    const double beta = guarded_div(beta_num, beta_den, "estimate_from_z (beta)");
    const double alpha = guarded_div((beta - 1.0) * z(5) - 1.0 - z(2) - z(3) + z(4), z(4), "estimate_from_z (alpha)");
    return {alpha, beta, (alpha + beta) / z(1)};
}

EstimateResult estimate_zhao(const BivariateSample& input) {
    const auto sample = canonical(input);
    require_min_size(sample, "estimate_zhao");
    double sy = 0.0, slx = 0.0, s5 = 0.0, sly = 0.0, s8 = 0.0, s9 = 0.0;
    for (const auto& [x, y] : sample) {
        const double lx = std::log(x);
        const double ly = std::log(y);
        sy += y;
        slx += lx;
        s5 += x * lx / (y - x);
        sly += ly;
        s8 += y * ly / (y - x);
        s9 += y * ly;
    }
    const auto n = static_cast<double>(sample.size());
    sy /= n;
    slx /= n;
    s5 /= n;
    sly /= n;
    s8 /= n;
    s9 /= n;
    const double beta = guarded_div((1.0 + s5) * s9 + (1.0 + sly - s8) * sy * slx, (s9 - sy * s8) * slx + s5 * s9,
                                    "estimate_zhao (beta)");
    const double alpha = guarded_div((beta - 1.0) * s5 - 1.0, slx, "estimate_zhao (alpha)");
    return finalize(Method::kZhao, {alpha, beta, (alpha + beta) / sy}, LikelihoodSummary::of(sample));
}

EstimateResult estimate_proposed1(const BivariateSample& input, double r, double s) {
    const auto sample = canonical(input);
    require_min_size(sample, "estimate_proposed1");
    auto res = finalize(Method::kProposed1, estimate_from_z(summarize_z(sample, TransformPairG::exp_shift(r, s))),
                        LikelihoodSummary::of(sample));
    res.r = r;
    res.s = s;
    return res;
}

// --- ratio route -------------------------------------------------------------

SummaryU summarize_u(const BivariateSample& input, const TransformPairL& l) {
    const auto sample = canonical(input);
    SummaryU out;
    const std::array<const TransformL*, 2> maps = {&l.l1, &l.l2};
    for (const auto& [x, y] : sample) {
        const double w = x / y;
        for (std::size_t j = 0; j < 2; ++j) {
            const TransformL& map = *maps[j];
            const double lt = map.log_inverse(w);
            const double core = map.d1_times_inverse(w) * lt;
            out.values[0][j] += core / w;
            out.values[1][j] += core / (1.0 - w);
            out.values[2][j] += map.curvature_times_inverse(w) * lt;
            out.values[3][j] += (2.0 * w - 1.0) * core / (w * (1.0 - w));
            out.values[4][j] += lt;
        }
    }
    const auto n = static_cast<double>(sample.size());
    for (auto& row : out.values) {
        for (auto& v : row) {
            v /= n;
            if (!std::isfinite(v)) throw NumericRangeError("summarize_u: statistic outside double range");
        }
    }
    return out;
}

Estimate estimate_from_u(const SummaryU& us, double mean_y_value) {
    const auto u = [&](int k, int j) { return us.u(k, j); };
    if (!(mean_y_value > 0.0)) throw DomainError("estimate_from_u: mean of y must be positive");
    const double lead1 = 1.0 + u(3, 1) + u(4, 1) + u(5, 1);
    const double k = guarded_div(lead1, u(2, 1), "estimate_from_u (U21)");
    const double ratio11 = guarded_div(u(1, 1), u(2, 1), "estimate_from_u (U21)");
    const double num = k * u(2, 2) - 1.0 - u(3, 2) - u(4, 2) - u(5, 2);
    const double alpha = guarded_div(num, u(1, 2) - ratio11 * u(2, 2), "estimate_from_u (alpha)");
    const double beta = (alpha * u(1, 1) + lead1) / u(2, 1);
    const double gamma = (alpha * (1.0 + ratio11) + k) / mean_y_value;
    return {alpha, beta, gamma};
}

EstimateResult estimate_nawa(const BivariateSample& input) {
    const auto sample = canonical(input);
    require_min_size(sample, "estimate_nawa");
    double sw = 0.0, sl = 0.0, swl = 0.0, sy = 0.0;
    for (const auto& [x, y] : sample) {
        const double w = x / y;
        const double l = std::log(x / (y - x));
        sw += w;
        sl += l;
        swl += w * l;
        sy += y;
    }
    const auto n = static_cast<double>(sample.size());
    sw /= n;
    sl /= n;
    swl /= n;
    sy /= n;
    const double den = swl - sw * sl;
    const double alpha = guarded_div(sw, den, "estimate_nawa");
    const double beta = guarded_div(1.0 - sw, den, "estimate_nawa");
    const double gamma = guarded_div(1.0, sy * den, "estimate_nawa");
    return finalize(Method::kNawa, {alpha, beta, gamma}, LikelihoodSummary::of(sample));
}

SummaryRatio ratio_statistics(const BivariateSample& input, double r, double s, RatioWeight weight) {
    const auto sample = canonical(input);
    return RatioPass(sample, r).stats(s, weight);
}

Estimate estimate_from_ratio(const SummaryRatio& st, double mean_y_value) {
    if (!(mean_y_value > 0.0)) throw DomainError("estimate_from_ratio: mean of y must be positive");
    const double c_over_a = guarded_div(st.c, st.a, "estimate_from_ratio (A)");
    const double num = -st.r - st.e - st.c + st.d - st.r * st.s * st.f - (st.b + 1.0) * c_over_a;
    const double beta = guarded_div(num, st.d - st.b * c_over_a, "estimate_from_ratio (beta)");
    const double alpha = ((beta - 1.0) * st.b - 1.0) / st.a;
    return {alpha, beta, (alpha + beta) / mean_y_value};
}

EstimateResult estimate_proposed2(const BivariateSample& input, double r, double s, RatioWeight weight) {
    const auto sample = canonical(input);
    require_min_size(sample, "estimate_proposed2");
    auto res = finalize(Method::kProposed2, estimate_from_ratio(ratio_statistics(sample, r, s, weight), mean_y(sample)),
                        LikelihoodSummary::of(sample));
    res.r = r;
    res.s = s;
    return res;
}

// --- maximum likelihood --------------------------------------------------------

std::array<double, 3> mean_score(const McKayParams& p, const BivariateSample& sample) {
    const auto ls = LikelihoodSummary::of(sample);
    const auto n = static_cast<double>(ls.n);
    const double lg = std::log(p.gamma_rate());
    return {lg - digamma(p.alpha()) + ls.sum_log_x / n, lg - digamma(p.beta()) + ls.sum_log_gap / n,
            (p.alpha() + p.beta()) / p.gamma_rate() - ls.sum_y / n};
}

EstimateResult estimate_ml(const BivariateSample& input, MlOptions options) {
    const auto sample = canonical(input);
    require_min_size(sample, "estimate_ml");
    for (const auto& [x, y] : sample) {
        if (y - x < 1e-300) throw DomainError("estimate_ml: degenerate pair with y - x below 1e-300");
    }
    const auto ls = LikelihoodSummary::of(sample);
    const auto n = static_cast<double>(ls.n);
    const double ybar = ls.sum_y / n;
    const double c1 = ls.sum_log_x / n - std::log(ybar);
    const double c2 = ls.sum_log_gap / n - std::log(ybar);

    // Residual of the gamma-profiled score: F = -(score_alpha, score_beta) / n.
    const auto residual = [&](double a, double b) {
        const double lab = std::log(a + b);
        return std::array<double, 2>{digamma(a) - lab - c1, digamma(b) - lab - c2};
    };
    const auto norm2 = [](const std::array<double, 2>& f) { return f[0] * f[0] + f[1] * f[1]; };

    double a = 1.0, b = 1.0;
    try {
        const auto start = estimate_nawa(sample);
        if (start.theta.valid()) {
            a = start.theta.alpha;
            b = start.theta.beta;
        }
    } catch (const std::exception&) {
    }

    auto f = residual(a, b);
    std::size_t iter = 0;
    bool converged = std::max(std::abs(f[0]), std::abs(f[1])) <= options.tol;
    while (!converged && iter < options.max_iter) {
        ++iter;
        const double inv_ab = 1.0 / (a + b);
        const double j11 = trigamma(a) - inv_ab;
        const double j22 = trigamma(b) - inv_ab;
        const double j12 = -inv_ab;
        const double det = j11 * j22 - j12 * j12;
        const double da = -(j22 * f[0] - j12 * f[1]) / det;
        const double db = -(-j12 * f[0] + j11 * f[1]) / det;

        const double current = norm2(f);
        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= 60; ++halving, lambda *= 0.5) {
            const double na = a + lambda * da;
            const double nb = b + lambda * db;
            if (!(na > 0.0) || !(nb > 0.0) || !std::isfinite(na) || !std::isfinite(nb)) continue;
            const auto nf = residual(na, nb);
            if (norm2(nf) <= current) {
                a = na;
                b = nb;
                f = nf;
                accepted = true;
                break;
            }
        }
        converged = std::max(std::abs(f[0]), std::abs(f[1])) <= options.tol;
        if (!accepted) break;
    }

    // A few full Newton steps past the tolerance bring the root to rounding level,
    // so equivalent inputs (rescaled or reordered data) land on the same estimate.
    for (int polish = 0; converged && polish < 3; ++polish) {
        const double inv_ab = 1.0 / (a + b);
        const double j11 = trigamma(a) - inv_ab;
        const double j22 = trigamma(b) - inv_ab;
        const double det = j11 * j22 - inv_ab * inv_ab;
        const double na = a - (j22 * f[0] + inv_ab * f[1]) / det;
        const double nb = b - (inv_ab * f[0] + j11 * f[1]) / det;
        if (!(na > 0.0) || !(nb > 0.0)) break;
        const auto nf = residual(na, nb);
        if (!(norm2(nf) < norm2(f))) break;
        a = na;
        b = nb;
        f = nf;
    }

    auto res = finalize(Method::kMl, {a, b, (a + b) / ybar}, ls);
    res.converged = converged && res.theta.valid();
    res.iterations = iter;
    return res;
}

// --- profile ---------------------------------------------------------------

std::vector<double> default_profile_grid() {
    std::vector<double> grid;
    grid.reserve(25);
    for (int i = 1; i <= 25; ++i) grid.push_back(i / 10.0);
    return grid;
}

EstimateResult profile_select(const BivariateSample& input, Method family, std::span<const double> grid_r,
                              std::span<const double> grid_s, RatioWeight weight) {
    const auto sample = canonical(input);
    if (family != Method::kProposed1 && family != Method::kProposed2) {
        throw DomainError("profile_select: family must be proposed1 or proposed2");
    }
    require_min_size(sample, "profile_select");
    const auto rs = normalized_grid(grid_r, "r");
    const auto ss = normalized_grid(grid_s, "s");
    const auto ls = LikelihoodSummary::of(sample);
    const double ybar = mean_y(sample);

    std::optional<EstimateResult> best;
    std::size_t skipped = 0;
    const auto consider = [&](double r, double s, const Estimate& theta) {
        if (!theta.valid()) {
            ++skipped;
            return;
        }
        const double ll = log_likelihood(McKayParams(theta.alpha, theta.beta, theta.gamma), ls);
        if (!std::isfinite(ll)) {
            ++skipped;
            return;
        }
        if (!best || ll > best->loglik) {
            EstimateResult res;
            res.method = family;
            res.theta = theta;
            res.r = r;
            res.s = s;
            res.loglik = ll;
            res.converged = true;
            best = res;
        }
    };

    if (family == Method::kProposed1) {
        std::vector<std::optional<Half>> second(ss.size());
        for (std::size_t j = 0; j < ss.size(); ++j) {
            try {
                second[j] = second_half(sample, TransformG::exp_shift(ss[j]));
            } catch (const std::exception&) {
            }
        }
        for (double r : rs) {
            std::optional<Half> first;
            try {
                first = first_half(sample, TransformG::exp_shift(r));
            } catch (const std::exception&) {
            }
            for (std::size_t j = 0; j < ss.size(); ++j) {
                if (!first || !second[j]) {
                    ++skipped;
                    continue;
                }
                try {
                    consider(r, ss[j], estimate_from_z(assemble_z(ybar, *first, *second[j])));
                } catch (const std::exception&) {
                    ++skipped;
                }
            }
        }
    } else {
        for (double r : rs) {
            std::optional<RatioPass> pass;
            try {
                pass.emplace(sample, r);
            } catch (const std::exception&) {
                skipped += ss.size();
                continue;
            }
            for (double s : ss) {
                try {
                    consider(r, s, estimate_from_ratio(pass->stats(s, weight), ybar));
                } catch (const std::exception&) {
                    ++skipped;
                }
            }
        }
    }

    if (!best) throw NoValidEstimateError("profile_select: no grid point produced a valid estimate");
    best->skipped_grid_points = skipped;
    return *best;
}

EstimateResult estimate(const BivariateSample& sample, Method method) {
    switch (method) {
        case Method::kMl: return estimate_ml(sample);
        case Method::kZhao: return estimate_zhao(sample);
        case Method::kNawa: return estimate_nawa(sample);
        case Method::kProposed1:
        case Method::kProposed2: {
            const auto grid = default_profile_grid();
            return profile_select(sample, method, grid, grid);
        }
    }
    throw DomainError("estimate: unknown method");
}

}  // namespace mckay
