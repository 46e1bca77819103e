#include "mckay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "mckay/errors.hpp"
#include "mckay/rng.hpp"
#include "parallel.hpp"

namespace mckay {

std::vector<MethodSpec> default_methods() {
    const auto wrap = [](Method m) {
        return MethodSpec{std::string(to_string(m)), [m](const BivariateSample& s) { return estimate(s, m); }};
    };
    return {wrap(Method::kProposed1), wrap(Method::kProposed2), wrap(Method::kMl), wrap(Method::kZhao),
            wrap(Method::kNawa)};
}

std::vector<MethodSpec> methods_by_name(std::span<const std::string> names) {
    const auto all = default_methods();
    std::vector<MethodSpec> out;
    for (const auto& name : names) {
        const auto it = std::find_if(all.begin(), all.end(), [&](const MethodSpec& m) { return m.name == name; });
        if (it == all.end()) throw DomainError("unknown method '" + name + "'");
        out.push_back(*it);
    }
    return out;
}

std::array<ParamMetrics, 3> metrics(std::span<const std::array<double, 3>> estimates, const McKayParams& truth) {
    if (estimates.empty()) throw DomainError("metrics: no estimates");
    const std::array<double, 3> theta = {truth.alpha(), truth.beta(), truth.gamma_rate()};
    const auto m = static_cast<double>(estimates.size());
    std::array<ParamMetrics, 3> out{};
    for (std::size_t k = 0; k < 3; ++k) {
        double sum = 0.0, abs_rel = 0.0, sq = 0.0;
        for (const auto& e : estimates) {
            const double d = e[k] - theta[k];
            sum += e[k];
            abs_rel += std::abs(d);
            sq += d * d;
        }
        out[k] = {std::abs(sum / m - theta[k]), abs_rel / m / theta[k], std::sqrt(sq / m)};
    }
    return out;
}

const MCRow* MCReport::find(std::string_view scenario, std::size_t n, std::string_view method,
                            std::string_view param) const {
    for (const auto& r : rows) {
        if (r.scenario == scenario && r.n == n && r.method == method && r.param == param) return &r;
    }
    return nullptr;
}

MCReport run_scenario(const Scenario& s, std::uint64_t base_seed, std::size_t jobs) {
    if (s.n < 2) throw DomainError("run_scenario: n must be >= 2");
    if (s.m < 1) throw DomainError("run_scenario: m must be >= 1");
    if (!(s.data_scale > 0.0) || !std::isfinite(s.data_scale)) throw DomainError("run_scenario: bad data scale");
    const std::size_t k = s.methods.size();

    // slot (j, method) holds the estimate or nothing on failure
    std::vector<std::optional<std::array<double, 3>>> slots(s.m * k);
    detail::parallel_for(s.m, jobs, [&](std::size_t j) {
        auto sample = sample_mckay(s.params, s.n, substream_seed(base_seed, s.id, j));
        if (s.data_scale != 1.0) sample = sample.scaled(s.data_scale);
        for (std::size_t q = 0; q < k; ++q) {
            try {
                const auto res = s.methods[q].fn(sample);
                if (res.converged && res.theta.valid()) slots[j * k + q] = res.theta.as_array();
            } catch (const std::exception&) {
            }
        }
    });

    const McKayParams truth(s.params.alpha(), s.params.beta(), s.params.gamma_rate() / s.data_scale);
    MCReport report;
    for (std::size_t q = 0; q < k; ++q) {
        std::vector<std::array<double, 3>> ok;
        for (std::size_t j = 0; j < s.m; ++j) {
            if (slots[j * k + q]) ok.push_back(*slots[j * k + q]);
        }
        const std::size_t failures = s.m - ok.size();
        std::optional<std::array<ParamMetrics, 3>> met;
        if (!ok.empty()) met = metrics(ok, truth);
        for (std::size_t p = 0; p < 3; ++p) {
            MCRow row;
            row.scenario = s.label;
            row.n = s.n;
            row.method = s.methods[q].name;
            row.param = kParamNames[p];
            if (met) row.value = (*met)[p];
            row.failures = failures;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::array<McKayParams, 4> study_parameter_sets() {
    return {McKayParams(1.7, 1.5, 1.1), McKayParams(3.0, 1.0, 2.0), McKayParams(2.5, 4.0, 0.6),
            McKayParams(1.2, 3.5, 1.5)};
}

std::vector<Scenario> study_scenarios(std::size_t m) {
    const auto sets = study_parameter_sets();
    const std::array<std::size_t, 3> sizes = {20, 50, 100};
    std::vector<Scenario> out;
    for (std::size_t p = 0; p < sets.size(); ++p) {
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            Scenario s;
            s.id = 3 * p + k;
            s.label = std::to_string(p + 1);
            s.params = sets[p];
            s.n = sizes[k];
            s.m = m;
            s.methods = default_methods();
            out.push_back(std::move(s));
        }
    }
    return out;
}

MCReport run_study_suite(std::uint64_t base_seed, std::size_t m, std::size_t jobs) {
    MCReport all;
    for (const auto& s : study_scenarios(m)) {
        auto part = run_scenario(s, base_seed, jobs);
        all.rows.insert(all.rows.end(), std::make_move_iterator(part.rows.begin()),
                        std::make_move_iterator(part.rows.end()));
    }
    return all;
}

std::string render_tables(const MCReport& report) {
    // scenario -> ordered n list and method order as first seen
    std::vector<std::string> scenarios;
    std::map<std::string, std::vector<std::size_t>> sizes;
    std::map<std::string, std::vector<std::string>> methods;
    for (const auto& r : report.rows) {
        if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end()) scenarios.push_back(r.scenario);
        auto& ns = sizes[r.scenario];
        if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
        auto& ms = methods[r.scenario];
        if (std::find(ms.begin(), ms.end(), r.method) == ms.end()) ms.push_back(r.method);
    }
    std::ostringstream os;
    char buf[64];
    for (const auto& sc : scenarios) {
        os << "scenario " << sc << "\n";
        os << "method     param ";
        for (std::size_t n : sizes[sc]) {
            std::snprintf(buf, sizeof buf, "| n=%-4zu %10s %10s %10s ", n, "AB", "MARE", "RMSE");
            os << buf;
        }
        os << "\n";
        for (const auto& me : methods[sc]) {
            for (const char* pa : kParamNames) {
                std::snprintf(buf, sizeof buf, "%-10s %-5s ", me.c_str(), pa);
                os << buf;
                for (std::size_t n : sizes[sc]) {
                    const MCRow* row = report.find(sc, n, me, pa);
                    if (row && row->value) {
                        std::snprintf(buf, sizeof buf, "| %6s %10.6f %10.6f %10.6f ", "", row->value->ab,
                                      row->value->mare, row->value->rmse);
                    } else {
                        std::snprintf(buf, sizeof buf, "| %6s %10s %10s %10s ", "", "-", "-", "-");
                    }
                    os << buf;
                }
                os << "\n";
            }
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace mckay
