#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mckay/asymptotics.hpp"
#include "mckay/errors.hpp"
#include "mckay/estimators.hpp"
#include "mckay/inference.hpp"
#include "mckay/ingest.hpp"
#include "mckay/model.hpp"
#include "mckay/montecarlo.hpp"
#include "mckay/specfun.hpp"

namespace py = pybind11;
using namespace mckay;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

BivariateSample to_sample(const Array& x, const Array& y) {
    if (x.ndim() != 1 || y.ndim() != 1 || x.size() != y.size()) {
        throw DomainError("x and y must be 1-d arrays of equal length");
    }
    std::vector<Pair> pairs(static_cast<std::size_t>(x.size()));
    const auto xs = x.unchecked<1>();
    const auto ys = y.unchecked<1>();
    for (py::ssize_t i = 0; i < x.size(); ++i) pairs[static_cast<std::size_t>(i)] = {xs(i), ys(i)};
    return BivariateSample(std::move(pairs));
}

Array to_array(const BivariateSample& s) {
    Array out({static_cast<py::ssize_t>(s.size()), py::ssize_t{2}});
    auto m = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < s.size(); ++i) {
        m(static_cast<py::ssize_t>(i), 0) = s[i].x;
        m(static_cast<py::ssize_t>(i), 1) = s[i].y;
    }
    return out;
}

RatioWeight weight_from(const std::string& name) {
    if (name == "tabulated") return RatioWeight::kTabulated;
    if (name == "score") return RatioWeight::kScoreConsistent;
    throw DomainError("ratio_weight must be 'tabulated' or 'score'");
}

Estimator make_estimator(const std::string& method, std::optional<double> r, std::optional<double> s,
                         const std::string& ratio_weight) {
    const Method m = method_from_string(method);
    const RatioWeight w = weight_from(ratio_weight);
    if (r.has_value() != s.has_value()) throw DomainError("r and s must be given together");
    if (r) {
        const double rv = *r, sv = *s;
        if (m == Method::kProposed1) return [=](const BivariateSample& x) { return estimate_proposed1(x, rv, sv); };
        if (m == Method::kProposed2) return [=](const BivariateSample& x) { return estimate_proposed2(x, rv, sv, w); };
        throw DomainError("r and s apply only to proposed1 and proposed2");
    }
    if (m == Method::kProposed2 && w != RatioWeight::kTabulated) {
        const auto grid = default_profile_grid();
        return [=](const BivariateSample& x) { return profile_select(x, m, grid, grid, w); };
    }
    return [m](const BivariateSample& x) { return estimate(x, m); };
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "McKay bivariate gamma: sampling, estimation, inference";

    auto base = py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
    py::register_exception<DegenerateStatisticsError>(mod, "DegenerateStatisticsError", PyExc_ArithmeticError);
    py::register_exception<NumericRangeError>(mod, "NumericRangeError", PyExc_OverflowError);
    py::register_exception<NoValidEstimateError>(mod, "NoValidEstimateError", PyExc_ArithmeticError);
    py::register_exception<InsufficientReplicatesError>(mod, "InsufficientReplicatesError", PyExc_RuntimeError);
    py::register_exception<DifferentiationError>(mod, "DifferentiationError", PyExc_ArithmeticError);
    py::register_exception<ParseError>(mod, "ParseError", base.ptr());
    py::register_exception<IoError>(mod, "IoError", PyExc_OSError);

    mod.def("log_gamma", &log_gamma, py::arg("x"));
    mod.def("digamma", &digamma, py::arg("x"));
    mod.def("trigamma", &trigamma, py::arg("x"));
    mod.def("reg_gamma_p", &reg_gamma_p, py::arg("a"), py::arg("x"));

    py::class_<McKayParams>(mod, "Params")
        .def(py::init<double, double, double>(), py::arg("alpha"), py::arg("beta"), py::arg("gamma"))
        .def_property_readonly("alpha", &McKayParams::alpha)
        .def_property_readonly("beta", &McKayParams::beta)
        .def_property_readonly("gamma", &McKayParams::gamma_rate)
        .def("__repr__", [](const McKayParams& p) {
            return "Params(alpha=" + format_double(p.alpha()) + ", beta=" + format_double(p.beta()) +
                   ", gamma=" + format_double(p.gamma_rate()) + ")";
        });

    py::class_<EstimateResult>(mod, "EstimateResult")
        .def_property_readonly("method", [](const EstimateResult& r) { return std::string(to_string(r.method)); })
        .def_property_readonly("alpha", [](const EstimateResult& r) { return r.theta.alpha; })
        .def_property_readonly("beta", [](const EstimateResult& r) { return r.theta.beta; })
        .def_property_readonly("gamma", [](const EstimateResult& r) { return r.theta.gamma; })
        .def_readonly("r", &EstimateResult::r)
        .def_readonly("s", &EstimateResult::s)
        .def_readonly("loglik", &EstimateResult::loglik)
        .def_readonly("converged", &EstimateResult::converged)
        .def_readonly("iterations", &EstimateResult::iterations)
        .def_readonly("skipped_grid_points", &EstimateResult::skipped_grid_points)
        .def("params", &EstimateResult::params)
        .def("__repr__", [](const EstimateResult& r) {
            return "EstimateResult(method=" + std::string(to_string(r.method)) + ", alpha=" +
                   format_double(r.theta.alpha) + ", beta=" + format_double(r.theta.beta) +
                   ", gamma=" + format_double(r.theta.gamma) + ")";
        });

    mod.def(
        "log_pdf", [](const McKayParams& p, double x, double y) { return log_pdf(p, x, y); }, py::arg("params"),
        py::arg("x"), py::arg("y"));
    mod.def(
        "log_likelihood",
        [](const McKayParams& p, const Array& x, const Array& y) { return log_likelihood(p, to_sample(x, y)); },
        py::arg("params"), py::arg("x"), py::arg("y"));
    mod.def(
        "sample",
        [](const McKayParams& p, std::size_t n, std::uint64_t seed) { return to_array(sample_mckay(p, n, seed)); },
        py::arg("params"), py::arg("n"), py::arg("seed") = 42, "Draw an (n, 2) array of (x, y) pairs.");
    mod.def(
        "rosenblatt",
        [](const McKayParams& p, const Array& x, const Array& y) {
            const auto u = rosenblatt(p, to_sample(x, y));
            Array out({static_cast<py::ssize_t>(u.size()), py::ssize_t{2}});
            auto m = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < u.size(); ++i) {
                m(static_cast<py::ssize_t>(i), 0) = u[i].u1;
                m(static_cast<py::ssize_t>(i), 1) = u[i].u2;
            }
            return out;
        },
        py::arg("params"), py::arg("x"), py::arg("y"));
    mod.def(
        "density_grid",
        [](const McKayParams& p, double x_max, double y_max, std::size_t resolution) {
            const auto g = density_grid(p, x_max, y_max, resolution);
            Array out({static_cast<py::ssize_t>(g.size()), py::ssize_t{3}});
            auto m = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto k = static_cast<py::ssize_t>(i);
                m(k, 0) = g[i].x;
                m(k, 1) = g[i].y;
                m(k, 2) = g[i].f;
            }
            return out;
        },
        py::arg("params"), py::arg("x_max"), py::arg("y_max"), py::arg("resolution") = 50);

    mod.def(
        "fit",
        [](const Array& x, const Array& y, const std::string& method, std::optional<double> r,
           std::optional<double> s, const std::string& ratio_weight) {
            return make_estimator(method, r, s, ratio_weight)(to_sample(x, y));
        },
        py::arg("x"), py::arg("y"), py::arg("method") = "ml", py::arg("r") = py::none(), py::arg("s") = py::none(),
        py::arg("ratio_weight") = "tabulated",
        "Estimate (alpha, beta, gamma). Proposed methods profile (r, s) unless both are given.");
    mod.def(
        "profile_select",
        [](const Array& x, const Array& y, const std::string& family, std::vector<double> grid_r,
           std::vector<double> grid_s, const std::string& ratio_weight) {
            return profile_select(to_sample(x, y), method_from_string(family), grid_r, grid_s,
                                  weight_from(ratio_weight));
        },
        py::arg("x"), py::arg("y"), py::arg("family"), py::arg("grid_r"), py::arg("grid_s"),
        py::arg("ratio_weight") = "tabulated");
    mod.def("default_profile_grid", &default_profile_grid);

    mod.def(
        "bootstrap_se",
        [](const Array& x, const Array& y, const std::string& method, std::size_t b, std::size_t block_len,
           std::uint64_t seed, std::size_t jobs) {
            const auto sample = to_sample(x, y);
            const auto est = make_estimator(method, std::nullopt, std::nullopt, "tabulated");
            BootstrapResult res;
            {
                py::gil_scoped_release release;
                res = bootstrap_se(sample, est, BootstrapConfig{b, block_len, seed}, jobs);
            }
            py::dict d;
            d["se"] = res.se;
            d["effective"] = res.effective();
            d["dropped"] = res.dropped;
            d["block_len"] = res.block_len;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("method") = "ml", py::arg("b") = 2000, py::arg("block_len") = 0,
        py::arg("seed") = 42, py::arg("jobs") = 1, "Moving-block bootstrap standard errors; block_len 0 picks ceil(n^(1/3)).");
    mod.def(
        "gof",
        [](const McKayParams& p, const Array& x, const Array& y, std::size_t b, std::uint64_t seed,
           std::size_t jobs) {
            const auto sample = to_sample(x, y);
            GofResult g;
            {
                py::gil_scoped_release release;
                g = gof_mckay(sample, p, b, seed, jobs);
            }
            py::dict d;
            d["statistic"] = g.statistic;
            d["p_value"] = g.p_value;
            d["b"] = g.b;
            return d;
        },
        py::arg("params"), py::arg("x"), py::arg("y"), py::arg("b") = 3000, py::arg("seed") = 42,
        py::arg("jobs") = 1, "Cramer-von Mises test of Rosenblatt-transformed pairs against Uniform(0,1)^2.");
    mod.def(
        "zhao_asymptotic_se",
        [](const Array& x, const Array& y) {
            const auto a = asymptotic_covariance(to_sample(x, y), TransformPairG::identity());
            return std::array<double, 3>{a.se[0], a.se[1], a.se[2]};
        },
        py::arg("x"), py::arg("y"), "Delta-method standard errors of the identity-transform Z estimator.");

    mod.def(
        "rainfall_pairs",
        [](std::optional<std::vector<double>> series) {
            if (series) return to_array(rainfall_pairs(*series));
            return to_array(rainfall_pairs(bundled_rainfall_series()));
        },
        py::arg("series") = py::none(), "Overlapping (x_t, x_t + x_{t+1}) pairs; the bundled series by default.");

    mod.def(
        "monte_carlo",
        [](const McKayParams& p, std::size_t n, std::size_t reps, std::vector<std::string> methods,
           std::uint64_t seed, std::size_t jobs) {
            Scenario sc;
            sc.label = "custom";
            sc.params = p;
            sc.n = n;
            sc.m = reps;
            sc.methods = methods.empty() ? default_methods() : methods_by_name(methods);
            MCReport rep;
            {
                py::gil_scoped_release release;
                rep = run_scenario(sc, seed, jobs);
            }
            py::list rows;
            for (const auto& r : rep.rows) {
                py::dict d;
                d["method"] = r.method;
                d["param"] = r.param;
                d["n"] = r.n;
                d["failures"] = r.failures;
                if (r.value) {
                    d["ab"] = r.value->ab;
                    d["mare"] = r.value->mare;
                    d["rmse"] = r.value->rmse;
                } else {
                    d["ab"] = py::none();
                    d["mare"] = py::none();
                    d["rmse"] = py::none();
                }
                rows.append(d);
            }
            return rows;
        },
        py::arg("params"), py::arg("n"), py::arg("reps") = 1000, py::arg("methods") = std::vector<std::string>{},
        py::arg("seed") = 42, py::arg("jobs") = 1, "AB, MARE and RMSE per method and parameter.");
}
