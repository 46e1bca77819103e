#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mckay/errors.hpp"
#include "mckay/ingest.hpp"
#include "mckay/rng.hpp"

using namespace mckay;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mckay_ingest_" + name);
}

}  // namespace

TEST_CASE("read_pairs parses a header and rows") {
    std::istringstream in("x,y\n1,2\n2,4\n");
    const auto s = read_pairs(in);
    REQUIRE(s.size() == 2);
    CHECK(s[1] == Pair{2, 4});

    std::istringstream sci("x,y\r\n1e-3, 2.5E+1\r\n\r\n");
    CHECK(read_pairs(sci)[0] == Pair{1e-3, 25.0});
}

TEST_CASE("read_pairs reports problems precisely") {
    std::istringstream support("x,y\n1,2\n3,2\n");
    try {
        (void)read_pairs(support);
        FAIL("expected support violation");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("pair 1") != std::string::npos);
    }

    std::istringstream garbled("x,y\n1,2\n\n1,abc\n");
    try {
        (void)read_pairs(garbled);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }

    std::istringstream no_header("1,2\n");
    CHECK_THROWS_AS((void)read_pairs(no_header), ParseError);
    std::istringstream empty("x,y\n");
    CHECK_THROWS_AS((void)read_pairs(empty), ParseError);
    std::istringstream nan_row("x,y\nnan,2\n");
    CHECK_THROWS_AS((void)read_pairs(nan_row), DomainError);
    CHECK_THROWS_AS((void)read_pairs(temp_file("does_not_exist.csv")), IoError);
}

TEST_CASE("format_double is shortest round-trip with enough digits") {
    Rng rng(4);
    for (int i = 0; i < 10000; ++i) {
        const double v = std::exp(40.0 * (rng.uniform() - 0.5)) * rng.uniform();
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(38.27) == "38.27");
}

TEST_CASE("pairs round-trip through a file") {
    const auto s = sample_mckay(McKayParams(1.7, 1.5, 1.1), 500, 1);
    const auto path = temp_file("roundtrip.csv");
    write_pairs(s, path);
    const auto back = read_pairs(path);
    CHECK(back == s);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y");

    std::ostringstream a, b;
    write_pairs(s, a);
    write_pairs(s, b);
    CHECK(a.str() == b.str());
    std::filesystem::remove(path);
}

TEST_CASE("write failures surface the path") {
    const std::filesystem::path bad = "/nonexistent_dir_for_mckay/out.csv";
    try {
        write_pairs(BivariateSample({{1, 2}}), bad);
        FAIL("expected an I/O error");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("nonexistent_dir_for_mckay") != std::string::npos);
    }
    CHECK_THROWS_AS(write_report(MCReport{}, bad), IoError);
}

TEST_CASE("rainfall pairs") {
    const auto series = bundled_rainfall_series();
    CHECK(series.size() == 119);
    const auto s = rainfall_pairs(series);
    CHECK(s.size() == 118);
    CHECK(s[0].x == 20.86);
    CHECK(std::abs(s[0].y - 38.27) < 1e-12);
    const std::vector<double> two = {1, 2};
    const auto one = rainfall_pairs(two);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Pair{1, 3});
    const std::vector<double> bad = {1, -2, 3};
    CHECK_THROWS_AS((void)rainfall_pairs(bad), DomainError);
    const std::vector<double> single = {1};
    CHECK_THROWS_AS((void)rainfall_pairs(single), DomainError);
    for (std::size_t n = 2; n < 30; ++n) {
        std::vector<double> v(n, 1.5);
        CHECK(rainfall_pairs(v).size() == n - 1);
    }
}

TEST_CASE("bundled data file matches the built-in series") {
    const auto file = read_series(std::filesystem::path(MCKAY_DATA_DIR) / "la_rainfall.csv");
    const auto built = bundled_rainfall_series();
    REQUIRE(file.size() == built.size());
    for (std::size_t i = 0; i < file.size(); ++i) CHECK(file[i] == built[i]);

    std::istringstream with_comments("# inches\nvalue\n1.5\n\n2.5\n");
    CHECK(read_series(with_comments) == std::vector<double>{1.5, 2.5});
    std::istringstream broken("1.5\nabc\n");
    CHECK_THROWS_AS((void)read_series(broken), ParseError);
}

TEST_CASE("report and density formats") {
    MCReport rep;
    MCRow full;
    full.scenario = "1";
    full.n = 20;
    full.method = "ml";
    full.param = "alpha";
    full.value = ParamMetrics{0.5, 0.25, 0.75};
    MCRow empty = full;
    empty.value.reset();
    empty.failures = 7;
    rep.rows = {full, empty};
    std::ostringstream os;
    write_report(rep, os);
    CHECK(os.str() == "scenario,n,method,param,ab,mare,rmse,failures\n1,20,ml,alpha,0.5,0.25,0.75,0\n"
                      "1,20,ml,alpha,,,,7\n");

    std::ostringstream d;
    const std::vector<GridPoint> g = {{0.5, 1.5, 0.25}};
    write_density_grid(g, d);
    CHECK(d.str() == "x,y,f\n0.5,1.5,0.25\n");
}
