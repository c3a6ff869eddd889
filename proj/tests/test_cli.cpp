#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "commands.hpp"
#include "quasifit/error.hpp"
#include "quasifit/report.hpp"
#include "support/synthetic.hpp"

using namespace quasifit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("quasifit_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Invocation {
    int status;
    std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "quasifit");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

const Date kFirstDay = parse_iso_date("2020-02-21");

// Two bumps over 500 days plus three days of padding on each side.
std::string write_input(const TempDir& dir) {
    const auto bumps = [](double d) {
        return 1000.0 * (testing::gaussian(d, 150, 30) + testing::gaussian(d, 380, 40));
    };
    const std::vector<RawSeries> cols{
        testing::daily_series("confirmed", kFirstDay, 500, 3, bumps),
        testing::daily_series("recovered", kFirstDay, 500, 3, [&](double d) { return 0.9 * bumps(d - 14); }),
        testing::daily_series("deaths", kFirstDay, 500, 3, [&](double d) { return 0.02 * bumps(d - 7); }),
    };
    const std::string path = dir / "input.csv";
    std::ofstream(path, std::ios::binary) << write_csv(cols);
    return path;
}

}  // namespace

TEST_CASE("resolve_window") {
    const Date first_raw = parse_iso_date("2020-02-18");
    cli::CliConfig c;
    WindowSpec w = cli::resolve_window(c, first_raw);
    CHECK(w.begin == parse_iso_date("2020-02-21"));
    CHECK(w.days() == 500);

    c.country = "ITALY";
    w = cli::resolve_window(c, first_raw);
    CHECK(w.country == "Italy");
    CHECK(w.end == parse_iso_date("2021-07-04"));

    c.days = 100;
    w = cli::resolve_window(c, first_raw);
    CHECK(w.begin == parse_iso_date("2020-02-21"));
    CHECK(w.days() == 100);

    cli::CliConfig bounds;
    bounds.begin = "2020-03-01";
    bounds.end = "2020-03-31";
    CHECK(cli::resolve_window(bounds, first_raw).days() == 31);
    bounds.days = 30;
    CHECK_THROWS_AS(cli::resolve_window(bounds, first_raw), Error);
    bounds.days.reset();
    bounds.end = "2020-03-10";
    CHECK_THROWS_AS(cli::resolve_window(bounds, first_raw), Error);

    cli::CliConfig unknown;
    unknown.country = "Atlantis";
    CHECK_THROWS_AS(cli::resolve_window(unknown, first_raw), Error);
}

TEST_CASE("fit command") {
    TempDir dir;
    const std::string input = write_input(dir);
    const std::vector<std::string> args{"fit",        "--input",    input,  "--column",
                                        "confirmed",  "--country",  "Italy", "--json-out",
                                        dir / "c.json", "--svg-out", dir / "c.svg"};
    const Invocation first = invoke(args);
    REQUIRE_MESSAGE(first.status == 0, first.err);
    CHECK(first.out.find("confirmed") != std::string::npos);

    const std::string json = slurp(dir / "c.json");
    const FitReport r = parse_report_json(json);
    CHECK(r.window.begin == kFirstDay);
    CHECK(r.window.days() == 500);
    CHECK(r.quasi_distribution.size() == 500);
    CHECK(r.omega_grid_scores.size() == 81);
    CHECK(std::sqrt(r.mse) <= 0.05 * *std::max_element(r.quasi_distribution.begin(), r.quasi_distribution.end()));
    CHECK(testing::well_formed_xml(slurp(dir / "c.svg")));

    const std::string svg = slurp(dir / "c.svg");
    REQUIRE(invoke(args).status == 0);
    CHECK(slurp(dir / "c.json") == json);
    CHECK(slurp(dir / "c.svg") == svg);
}

TEST_CASE("fit command errors") {
    TempDir dir;
    const std::string input = write_input(dir);

    const Invocation missing = invoke({"fit", "--input", input, "--column", "hospitalized"});
    CHECK(missing.status != 0);
    CHECK(missing.err.find("hospitalized") != std::string::npos);

    const Invocation no_file = invoke({"fit", "--input", dir / "absent.csv", "--column", "confirmed"});
    CHECK(no_file.status != 0);
    CHECK(no_file.err.find("absent.csv") != std::string::npos);

    const Invocation short_data =
        invoke({"fit", "--input", input, "--column", "confirmed", "--begin", "2020-03-01"});
    CHECK(short_data.status != 0);
    CHECK(short_data.err.find("short by") != std::string::npos);

    const Invocation bad_grid = invoke({"fit", "--input", input, "--column", "confirmed", "--omega-step", "0"});
    CHECK(bad_grid.status != 0);

    CHECK(invoke({"fit", "--column", "confirmed"}).status != 0);
    CHECK(invoke({}).status != 0);
}

TEST_CASE("compare command") {
    TempDir dir;
    const std::string input = write_input(dir);
    const Invocation r = invoke({"compare", "--input", input, "--columns", "confirmed,recovered,deaths", "--omega-step",
                                 "0.05", "--json-out", dir / "cmp.json", "--svg-out", dir / "cmp.svg"});
    REQUIRE_MESSAGE(r.status == 0, r.err);
    const std::string svg = slurp(dir / "cmp.svg");
    CHECK(testing::well_formed_xml(svg));
    CHECK(testing::count_occurrences(svg, "<polyline") == 3);
    CHECK(testing::count_occurrences(svg, "class=\"legend-entry\"") == 3);
    const std::string cmp = slurp(dir / "cmp.json");
    CHECK(testing::count_occurrences(cmp, "\"label\"") == 3);
    for (const char* label : {"confirmed", "recovered", "deaths"}) {
        CHECK(fs::exists(dir / (std::string("cmp_") + label + ".json")));
    }

    const Invocation one = invoke({"compare", "--input", input, "--columns", "confirmed"});
    CHECK(one.status != 0);
    CHECK(one.err.find(">=2") != std::string::npos);
}

TEST_CASE("basis command") {
    const Invocation q = invoke({"basis"});
    REQUIRE(q.status == 0);
    std::istringstream rows(q.out);
    std::string line;
    std::getline(rows, line);
    CHECK(line.rfind("t,N0,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
    int count = 0;
    while (std::getline(rows, line)) {
        ++count;
        std::vector<double> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(std::stod(cell));
        REQUIRE(cells.size() == 16);
        CHECK(std::abs(std::accumulate(cells.begin() + 1, cells.end(), 0.0) - 1.0) <= 1e-12);
    }
    CHECK(count == 101);

    const Invocation p = invoke({"basis", "--samples", "11", "--omega", "0.3"});
    REQUIRE(p.status == 0);
    std::istringstream prow(p.out);
    std::getline(prow, line);
    CHECK(std::count(line.begin(), line.end(), ',') == 29);

    CHECK(invoke({"basis", "--omega", "1.2"}).status != 0);
    CHECK(invoke({"basis", "--samples", "1"}).status != 0);
}
