#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "mckay/errors.hpp"
#include "mckay/estimators.hpp"
#include "mckay/inference.hpp"
#include "mckay/ingest.hpp"
#include "mckay/model.hpp"
#include "mckay/montecarlo.hpp"

namespace mckay::cli {

namespace {

constexpr const char* kSeedEnv = "MCKAY_SEED";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint64_t seed = 42;
    std::string out;
    std::size_t jobs = 1;

    // model parameters shared by sample / mc / density
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    std::size_t n = 0;

    // fit
    std::string input;
    std::string method;
    std::optional<double> r, s;
    bool profile = false;
    double grid_min = 0.1, grid_max = 2.5, grid_step = 0.1;
    std::string ratio_weight = "tabulated";
    std::string se = "none";
    std::size_t boot_b = 2000;
    std::size_t block_len = 0;
    bool gof = false;
    std::size_t gof_b = 3000;

    // mc
    std::string preset;
    std::size_t reps = 1000;
    std::vector<std::string> methods;
    bool tables = false;

    // density
    double x_max = 0.0, y_max = 0.0;
    std::size_t resolution = 50;
};

McKayParams params_of(const Options& o) {
    try {
        return McKayParams(o.alpha, o.beta, o.gamma);
    } catch (const DomainError&) {
        throw UsageError("--alpha, --beta and --gamma must be finite and > 0");
    }
}

// Writes to --out if given, otherwise to the data stream.
template <class Fn>
void emit(const Options& o, std::ostream& out, Fn&& fn) {
    if (o.out.empty() || o.out == "-") {
        fn(out);
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw IoError("cannot open '" + o.out + "' for writing");
    fn(file);
    file.flush();
    if (!file) throw IoError("write to '" + o.out + "' failed");
}

std::vector<double> make_grid(const Options& o) {
    if (!(o.grid_min > 0.0) || !(o.grid_max >= o.grid_min) || !(o.grid_step > 0.0)) {
        throw UsageError("grid needs 0 < --grid-min <= --grid-max and --grid-step > 0");
    }
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((o.grid_max - o.grid_min) / o.grid_step + 1e-9)) + 1;
    if (count > 10000) throw UsageError("grid has more than 10000 points per axis");
    for (std::size_t i = 0; i < count; ++i) {
        // round to 12 digits so 0.1 steps land on the same doubles as literal grids
        const double v = o.grid_min + static_cast<double>(i) * o.grid_step;
        grid.push_back(std::stod(format_double(std::round(v * 1e12) / 1e12)));
    }
    return grid;
}

Estimator fit_estimator(const Options& o, Method m) {
    const RatioWeight weight = o.ratio_weight == "score" ? RatioWeight::kScoreConsistent : RatioWeight::kTabulated;
    const bool proposed = m == Method::kProposed1 || m == Method::kProposed2;
    if (!proposed) {
        if (o.r || o.s || o.profile) throw UsageError("--r/--s/--profile apply only to proposed1 and proposed2");
        return [m](const BivariateSample& s) { return estimate(s, m); };
    }
    if (o.r.has_value() != o.s.has_value()) throw UsageError("--r and --s must be given together");
    if (o.r && o.profile) throw UsageError("--profile conflicts with fixed --r/--s");
    if (o.r) {
        const double r = *o.r, s = *o.s;
        if (!(r > 0.0) || !(s > 0.0)) throw UsageError("--r and --s must be > 0");
        if (m == Method::kProposed1) return [r, s](const BivariateSample& x) { return estimate_proposed1(x, r, s); };
        return [r, s, weight](const BivariateSample& x) { return estimate_proposed2(x, r, s, weight); };
    }
    const auto grid = make_grid(o);
    return [m, grid, weight](const BivariateSample& x) { return profile_select(x, m, grid, grid, weight); };
}

std::string opt_num(const std::optional<double>& v) { return v ? format_double(*v) : std::string("NA"); }

int cmd_sample(const Options& o, std::ostream& out) {
    const auto p = params_of(o);
    if (o.n < 1) throw UsageError("--n must be >= 1");
    const auto sample = sample_mckay(p, o.n, o.seed);
    emit(o, out, [&](std::ostream& os) { write_pairs(sample, os); });
    return kOk;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
    Method m{};
    try {
        m = method_from_string(o.method);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const auto estimator = fit_estimator(o, m);
    const auto sample = read_pairs(std::filesystem::path(o.input));
    const auto res = estimator(sample);

    std::optional<BootstrapResult> boot;
    if (o.se == "bootstrap") {
        if (o.block_len > sample.size()) throw UsageError("--block-len exceeds the sample size");
        boot = bootstrap_se(sample, estimator, BootstrapConfig{o.boot_b, o.block_len, o.seed}, o.jobs);
    }
    std::optional<GofResult> gof;
    if (o.gof) {
        if (!res.theta.valid()) throw DegenerateStatisticsError("goodness of fit needs a valid estimate");
        gof = gof_mckay(sample, res.params(), o.gof_b, o.seed, o.jobs);
    }

    std::ostringstream kv;
    kv << "method=" << to_string(m) << '\n'
       << "n=" << sample.size() << '\n'
       << "alpha=" << format_double(res.theta.alpha) << '\n'
       << "beta=" << format_double(res.theta.beta) << '\n'
       << "gamma=" << format_double(res.theta.gamma) << '\n'
       << "r=" << opt_num(res.r) << '\n'
       << "s=" << opt_num(res.s) << '\n'
       << "loglik=" << format_double(res.loglik) << '\n'
       << "converged=" << (res.converged ? "true" : "false") << '\n'
       << "iterations=" << res.iterations << '\n'
       << "skipped_grid_points=" << res.skipped_grid_points << '\n';
    if (boot) {
        kv << "se_alpha=" << format_double(boot->se[0]) << '\n'
           << "se_beta=" << format_double(boot->se[1]) << '\n'
           << "se_gamma=" << format_double(boot->se[2]) << '\n'
           << "boot_b=" << o.boot_b << '\n'
           << "boot_effective=" << boot->effective() << '\n'
           << "block_len=" << boot->block_len << '\n';
    }
    if (gof) {
        kv << "gof_statistic=" << format_double(gof->statistic) << '\n'
           << "gof_p=" << format_double(gof->p_value) << '\n'
           << "gof_b=" << gof->b << '\n';
    }
    emit(o, out, [&](std::ostream& os) { os << kv.str(); });

    err << std::fixed << std::setprecision(6);
    err << to_string(m) << " on " << sample.size() << " pairs\n";
    err << "  alpha = " << res.theta.alpha;
    if (boot) err << " (" << boot->se[0] << ")";
    err << "\n  beta  = " << res.theta.beta;
    if (boot) err << " (" << boot->se[1] << ")";
    err << "\n  gamma = " << std::setprecision(7) << res.theta.gamma;
    if (boot) err << " (" << boot->se[2] << ")";
    err << std::setprecision(4) << "\n  logL  = " << res.loglik << '\n';
    if (res.r) err << "  (r, s) = (" << *res.r << ", " << *res.s << ")\n";
    if (gof) err << "  GOF p = " << std::setprecision(3) << gof->p_value << '\n';
    if (!res.converged) err << "  warning: estimate did not converge or is outside the parameter space\n";
    return kOk;
}

int cmd_mc(const Options& o, std::ostream& out, std::ostream& err) {
    MCReport report;
    if (!o.preset.empty()) {
        if (o.preset != "study") throw UsageError("unknown preset '" + o.preset + "'");
        if (o.reps < 1) throw UsageError("--reps must be >= 1");
        for (const auto& sc : study_scenarios(o.reps)) {
            auto part = run_scenario(sc, o.seed, o.jobs);
            report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
        }
    } else {
        Scenario sc;
        sc.label = "custom";
        sc.params = params_of(o);
        if (o.n < 2) throw UsageError("--n must be >= 2");
        if (o.reps < 1) throw UsageError("--reps must be >= 1");
        sc.n = o.n;
        sc.m = o.reps;
        try {
            sc.methods = o.methods.empty() ? default_methods() : methods_by_name(o.methods);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        report = run_scenario(sc, o.seed, o.jobs);
    }
    emit(o, out, [&](std::ostream& os) { write_report(report, os); });
    if (o.tables) err << render_tables(report);
    const bool any = std::any_of(report.rows.begin(), report.rows.end(), [](const MCRow& r) { return r.value.has_value(); });
    if (!any) {
        err << "every cell failed\n";
        return kDegenerate;
    }
    return kOk;
}

int cmd_density(const Options& o, std::ostream& out) {
    const auto p = params_of(o);
    if (!(o.x_max > 0.0) || !(o.y_max > 0.0) || !std::isfinite(o.x_max) || !std::isfinite(o.y_max)) {
        throw UsageError("--x-max and --y-max must be finite and > 0");
    }
    if (o.resolution < 2) throw UsageError("--resolution must be >= 2");
    const auto grid = density_grid(p, o.x_max, o.y_max, o.resolution);
    emit(o, out, [&](std::ostream& os) { write_density_grid(grid, os); });
    return kOk;
}

int cmd_rainfall(const Options& o, std::ostream& out) {
    std::vector<double> series;
    if (o.input.empty()) {
        const auto bundled = bundled_rainfall_series();
        series.assign(bundled.begin(), bundled.end());
    } else {
        series = read_series(std::filesystem::path(o.input));
    }
    if (series.size() < 2) throw UsageError("the series needs at least two values");
    const auto pairs = rainfall_pairs(series);
    emit(o, out, [&](std::ostream& os) { write_pairs(pairs, os); });
    return kOk;
}

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv(kSeedEnv);
    if (!raw || !*raw) return std::nullopt;
    std::uint64_t v = 0;
    const std::string_view sv(raw);
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size()) {
        throw UsageError(std::string(kSeedEnv) + " must be an unsigned 64-bit integer");
    }
    return v;
}

void add_params(CLI::App* cmd, Options& o, bool required) {
    auto* a = cmd->add_option("--alpha", o.alpha, "shape of X");
    auto* b = cmd->add_option("--beta", o.beta, "shape of Y - X");
    auto* g = cmd->add_option("--gamma", o.gamma, "common rate");
    if (required) {
        a->required();
        b->required();
        g->required();
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"McKay bivariate gamma: sampling, closed-form and ML fitting, simulation, density export"};
    app.name(args.empty() ? "mckay" : args.front());
    app.fallthrough();
    app.require_subcommand(1);
    auto* seed_opt = app.add_option("--seed", o.seed, "random seed (default 42, or $MCKAY_SEED)");
    app.add_option("--out", o.out, "output file (default stdout)");

    auto* sample = app.add_subcommand("sample", "draw pairs from the model");
    add_params(sample, o, true);
    sample->add_option("--n", o.n, "number of pairs")->required();

    auto* fit = app.add_subcommand("fit", "estimate parameters from a pairs file");
    fit->add_option("--input", o.input, "pairs file with header x,y")->required();
    fit->add_option("--method", o.method, "ml | zhao | nawa | proposed1 | proposed2")->required();
    fit->add_option("--r", o.r, "fixed r for proposed methods");
    fit->add_option("--s", o.s, "fixed s for proposed methods");
    fit->add_flag("--profile", o.profile, "select (r, s) by profile likelihood (default for proposed methods)");
    fit->add_option("--grid-min", o.grid_min, "profile grid start")->capture_default_str();
    fit->add_option("--grid-max", o.grid_max, "profile grid end")->capture_default_str();
    fit->add_option("--grid-step", o.grid_step, "profile grid step")->capture_default_str();
    fit->add_option("--ratio-weight", o.ratio_weight, "E-statistic weight for proposed2")
        ->check(CLI::IsMember({"tabulated", "score"}))
        ->capture_default_str();
    fit->add_option("--se", o.se, "standard errors")->check(CLI::IsMember({"none", "bootstrap"}))->capture_default_str();
    fit->add_option("--boot-b", o.boot_b, "bootstrap replicates")->capture_default_str();
    fit->add_option("--block-len", o.block_len, "moving-block length (default ceil(n^(1/3)), 1 = iid)");
    fit->add_flag("--gof", o.gof, "Cramer-von Mises goodness of fit on Rosenblatt-transformed pairs");
    fit->add_option("--gof-b", o.gof_b, "GOF null replicates")->capture_default_str();
    fit->add_option("--jobs", o.jobs, "worker threads (0 = all cores)")->capture_default_str();

    auto* mc = app.add_subcommand("mc", "Monte Carlo comparison of the estimators");
    mc->add_option("--preset", o.preset, "'study' runs the full 4 x 3 x 5 design");
    add_params(mc, o, false);
    mc->add_option("--n", o.n, "sample size");
    mc->add_option("--reps", o.reps, "replications per cell")->capture_default_str();
    mc->add_option("--methods", o.methods, "subset of methods")->delimiter(',');
    mc->add_option("--jobs", o.jobs, "worker threads (0 = all cores)")->capture_default_str();
    mc->add_flag("--tables", o.tables, "also print formatted tables to stderr");

    auto* density = app.add_subcommand("density", "export the density on a regular grid");
    add_params(density, o, true);
    density->add_option("--x-max", o.x_max, "grid extent in x")->required();
    density->add_option("--y-max", o.y_max, "grid extent in y")->required();
    density->add_option("--resolution", o.resolution, "points per axis")->capture_default_str();

    auto* rainfall = app.add_subcommand("rainfall", "turn an annual series into overlapping two-year pairs");
    rainfall->add_option("--input", o.input, "one value per line (default: bundled Los Angeles series)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (seed_opt->count() == 0) {
            if (auto env = seed_from_env()) o.seed = *env;
        }
        if (mc->parsed() && o.preset.empty() && o.n == 0) throw UsageError("mc needs --preset study or --n");
        if (mc->parsed() && o.preset.empty() && (o.alpha <= 0.0 || o.beta <= 0.0 || o.gamma <= 0.0)) {
            throw UsageError("mc needs --alpha --beta --gamma unless --preset is given");
        }
        if (*sample) return cmd_sample(o, out);
        if (*fit) return cmd_fit(o, out, err);
        if (*mc) return cmd_mc(o, out, err);
        if (*density) return cmd_density(o, out);
        if (*rainfall) return cmd_rainfall(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        // degenerate statistics, empty profile, too few bootstrap replicates, range failures
        err << "error: " << e.what() << "\n";
        return kDegenerate;
    }
    return kUsage;
}

}  // namespace mckay::cli
