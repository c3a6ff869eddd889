// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "quasifit/curve_fit.hpp"
#include "quasifit/ingest.hpp"
#include "quasifit/pipeline.hpp"
#include "quasifit/quasi_dist.hpp"
#include "quasifit/spline_basis.hpp"
#include "support/synthetic.hpp"

using namespace quasifit;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome basis_suite() {
    Outcome o;
    const auto start = Clock::now();
    double partition = 0, reflection = 0, translation = 0, oracle = 0;
    for (int s = 0; s < 2000; ++s) {
        const double t = s / 1999.0;
        const BasisVector15 v = eval_all_quasi(t);
        const BasisVector15 mirrored = eval_all_quasi(1.0 - t);
        partition = std::max(partition, std::abs(std::accumulate(v.begin(), v.end(), 0.0) - 1.0));
        for (int i = 0; i < kQuasiCount; ++i) {
            reflection = std::max(reflection, std::abs(v[i] - mirrored[14 - i]));
            oracle = std::max(oracle, std::abs(eval_basis_closed_form(i, t) - eval_basis_recursive(i, t)));
        }
        for (int j = 1; j <= 4; ++j) {
            const double shifted = t - 0.1 * j;
            if (shifted >= 0.0) translation = std::max(translation, std::abs(v[5 + j] - eval_all_quasi(shifted)[5]));
        }
    }
    const double elapsed = seconds_since(start);
    o.require(partition <= 1e-12, "partition " + fmt("%.3g", partition));
    o.require(reflection <= 1e-12, "reflection " + fmt("%.3g", reflection));
    o.require(translation <= 1e-12, "translation " + fmt("%.3g", translation));
    o.require(oracle <= 1e-9, "closed form vs recursion " + fmt("%.3g", oracle));
    o.require(elapsed < 1.0, "runtime " + fmt("%.3f s", elapsed));
    if (o.pass) {
        o.detail = "partition " + fmt("%.2g", partition) + ", reflection " + fmt("%.2g", reflection) +
                   ", translation " + fmt("%.2g", translation) + ", oracle " + fmt("%.2g", oracle) + ", " +
                   fmt("%.3f s", elapsed);
    }
    return o;
}

Outcome piecewise_suite() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    double partition = 0, jump = 0;
    bool support = true;
    for (double omega : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        for (int s = 0; s < 2000; ++s) {
            const double t = s / 1999.0;
            const PiecewiseBasisVector29 v = eval_all_piecewise(t, omega);
            partition = std::max(partition, std::abs(std::accumulate(v.begin(), v.end(), 0.0) - 1.0));
            if (t < omega) support &= std::all_of(v.begin() + 15, v.end(), [](double x) { return x == 0.0; });
            if (t > omega) support &= std::all_of(v.begin(), v.begin() + 14, [](double x) { return x == 0.0; });
        }
        for (int trial = 0; trial < 100; ++trial) {
            PiecewiseCurve c;
            c.omega = omega;
            for (Point2& p : c.controls) p = {uni(rng), uni(rng)};
            const Point2 left = c(std::nextafter(omega, 0.0));
            const Point2 right = c(std::nextafter(omega, 1.0));
            const Point2 at = c(omega);
            jump = std::max({jump, std::abs(left.x - at.x), std::abs(left.y - at.y), std::abs(right.x - at.x),
                             std::abs(right.y - at.y)});
        }
    }
    o.require(partition <= 1e-12, "partition " + fmt("%.3g", partition));
    o.require(support, "one-sided support violated");
    o.require(jump <= 1e-10, "continuity " + fmt("%.3g", jump));
    if (o.pass) o.detail = "partition " + fmt("%.2g", partition) + ", continuity " + fmt("%.2g", jump);
    return o;
}

Outcome least_squares_optimality() {
    Outcome o;
    std::mt19937_64 rng(77);
    const std::vector<double> grid = make_omega_grid(0.1, 0.9, 0.01);
    double worst = 0;
    std::size_t accepted = 0;
    for (int d = 0; d < 20; ++d) {
        const std::vector<double> f = testing::random_distribution(rng, 500);
        const std::vector<Point2> points = day_points(f);
        const std::vector<double> params = chord_length_params(points);
        for (double omega : grid) {
            const DesignMatrix design = assemble_design(params, omega);
            const auto controls = solve_normal_equations(design, points);
            if (!controls) continue;
            ++accepted;
            worst = std::max(worst, normal_residual_ratio(design, points, *controls));
        }
    }
    o.require(accepted > 0, "no accepted candidates");
    o.require(worst <= 1e-8, "relative normal residual " + fmt("%.3g", worst));
    if (o.pass) o.detail = std::to_string(accepted) + " candidates, worst ratio " + fmt("%.2g", worst);
    return o;
}

Outcome generate_and_refit() {
    Outcome o;
    const std::size_t n = 500;
    PiecewiseCurve truth = testing::day_aligned_curve(0.3, n, testing::kinked_shape(0.3));
    const std::vector<double> f = testing::unit_mass_samples(truth, n);
    const FitResult r = fit(f, make_omega_grid(0.1, 0.9, 0.01), kSamplesPerDay * n);

    double mean_square = 0;
    for (double v : f) mean_square += v * v;
    mean_square /= static_cast<double>(n);
    const double relative = r.mse / mean_square;

    const bool omega_ok = std::abs(r.curve.omega - 0.3) <= 0.01 + 1e-12;
    const bool mse_ok = relative <= 1e-14;
    o.pass = omega_ok && mse_ok;
    o.detail = "omega " + fmt("%.2f", r.curve.omega) + (omega_ok ? " (within 0.01)" : " (outside 0.01)") +
               ", relative MSE " + fmt("%.3g", relative) + (mse_ok ? " <= 1e-14" : " > 1e-14");
    return o;
}

Outcome constant_reproduction() {
    Outcome o;
    const std::vector<double> f(500, 1.0 / 500);
    double worst = 0;
    for (double omega : make_omega_grid(0.1, 0.9, 0.01)) {
        const auto c = fit_fixed_omega(f, omega, kSamplesPerDay * f.size());
        if (!c) {
            o.require(false, "omega " + fmt("%.2f", omega) + " ill-conditioned");
            continue;
        }
        worst = std::max(worst, c->mse);
    }
    o.require(worst <= 1e-16, "MSE " + fmt("%.3g", worst));
    if (o.pass) o.detail = "worst MSE " + fmt("%.2g", worst) + " over 81 candidates";
    return o;
}

Outcome synthetic_epidemic() {
    Outcome o;
    const Date first = parse_iso_date("2020-02-21");
    const RawSeries raw = testing::daily_series("confirmed", first, 500, 3, [](double d) {
        return 1000.0 * (testing::gaussian(d, 150, 30) + testing::gaussian(d, 380, 40));
    });
    const WindowSpec window{"", first, add_days(first, 499)};
    const SeriesAnalysis a = analyze_series(raw, window, FitOptions{});

    // Equal amplitudes: component masses are proportional to the widths.
    const double analytic_mean = (30.0 * 150.0 + 40.0 * 380.0) / 70.0;
    const double mass = std::accumulate(a.quasi.values.begin(), a.quasi.values.end(), 0.0);
    const double max_f = *std::max_element(a.histogram.f.begin(), a.histogram.f.end());
    const double rmse = std::sqrt(a.fit.mse);

    o.require(std::abs(mass - 1.0) <= 1e-12, "mass " + fmt("%.17g", mass));
    o.require(rmse <= 0.05 * max_f, "RMSE/max " + fmt("%.3g", rmse / max_f));
    o.require(std::abs(a.quasi.mean - analytic_mean) <= 2.0,
              "mean " + fmt("%.3f", a.quasi.mean) + " vs " + fmt("%.3f", analytic_mean));
    if (o.pass) {
        o.detail = "omega " + fmt("%.2f", a.fit.curve.omega) + ", RMSE/max " + fmt("%.3g", rmse / max_f) +
                   ", mean " + fmt("%.3f", a.quasi.mean) + " vs " + fmt("%.3f", analytic_mean);
    }
    return o;
}

Outcome moving_average_zero_day() {
    Outcome o;
    const std::vector<double> finland{293, 189, 266, 0, 412};
    const Date first = parse_iso_date("2020-11-01");
    // Surrounded by empty days, every 7-day window that covers the zero day
    // still overlaps a reported day.
    RawSeries raw{"confirmed", {}};
    std::vector<double> values(3, 0.0);
    values.insert(values.end(), finland.begin(), finland.end());
    values.insert(values.end(), 3, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) raw.entries.push_back({add_days(first, static_cast<long>(i)), values[i]});
    const SmoothedSeries s = moving_average_7(raw);
    std::size_t zeros = 0;
    for (const DailyValue& e : s.entries) {
        const long offset = (e.date - raw.entries[6].date).count();
        if (std::abs(offset) <= 3 && e.value == 0.0) ++zeros;
    }
    o.require(zeros == 0, std::to_string(zeros) + " zero values");

    RawSeries week{"confirmed", {}};
    const std::vector<double> seven{293, 189, 266, 0, 412, 100, 200};
    for (std::size_t i = 0; i < seven.size(); ++i) week.entries.push_back({add_days(first, static_cast<long>(i)), seven[i]});
    const double centered = moving_average_7(week).entries.at(0).value;
    o.require(std::abs(centered - 1460.0 / 7.0) <= 1e-12, "7-day mean " + fmt("%.17g", centered));
    if (o.pass) o.detail = std::to_string(s.entries.size()) + " windows, none zero; mean " + fmt("%.6f", centered);
    return o;
}

Outcome preset_integrity() {
    Outcome o;
    const std::vector<WindowSpec>& presets = builtin_presets();
    o.require(presets.size() == 18, std::to_string(presets.size()) + " presets");
    for (const WindowSpec& w : presets) {
        o.require(w.days() == 500, w.country + " spans " + std::to_string(w.days()) + " days");
    }
    const auto italy = find_preset(presets, "Italy");
    o.require(italy.has_value(), "Italy missing");
    if (italy) {
        o.require(format_iso_date(italy->begin) == "2020-02-21" && format_iso_date(italy->end) == "2021-07-04",
                  "Italy window " + format_iso_date(italy->begin) + ".." + format_iso_date(italy->end));
        const WindowSpec raw = raw_coverage(*italy);
        o.require(format_iso_date(raw.begin) == "2020-02-18" && format_iso_date(raw.end) == "2021-07-07",
                  "Italy raw coverage " + format_iso_date(raw.begin) + ".." + format_iso_date(raw.end));
    }
    if (o.pass) o.detail = "18 windows of 500 days; Italy 2020-02-21..2021-07-04, raw 2020-02-18..2021-07-07";
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome performance_and_determinism() {
    namespace fs = std::filesystem;
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / ("quasifit_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);

    const Date first = parse_iso_date("2020-02-21");
    const std::vector<RawSeries> cols{testing::daily_series("confirmed", first, 500, 3, [](double d) {
        return 800.0 * testing::gaussian(d, 120, 25) + 500.0 * testing::gaussian(d, 330, 50) + 20.0;
    })};
    const fs::path input = dir / "input.csv";
    std::ofstream(input, std::ios::binary) << write_csv(cols);

    cli::CliConfig config;
    config.input = input.string();
    config.columns = {"confirmed"};
    config.begin = "2020-02-21";

    std::vector<std::string> outputs;
    double slowest = 0;
    for (int run = 0; run < 2; ++run) {
        config.json_out = (dir / ("run" + std::to_string(run) + ".json")).string();
        config.svg_out = (dir / ("run" + std::to_string(run) + ".svg")).string();
        std::ostringstream out, err;
        const auto start = Clock::now();
        const int status = cli::run_fit(config, out, err);
        slowest = std::max(slowest, seconds_since(start));
        o.require(status == 0, "fit failed: " + err.str());
        outputs.push_back(slurp(*config.json_out) + slurp(*config.svg_out));
    }
    std::error_code ec;
    fs::remove_all(dir, ec);

    o.require(slowest < 5.0, "fit took " + fmt("%.3f s", slowest));
    o.require(outputs[0] == outputs[1] && !outputs[0].empty(), "repeated runs differ");
    if (o.pass) o.detail = "N=500, 81 candidates, n=10000 in " + fmt("%.3f s", slowest) + "; outputs byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 basis correctness", basis_suite},
        {"2 piecewise basis", piecewise_suite},
        {"3 least-squares optimality", least_squares_optimality},
        {"4 generate-and-refit", generate_and_refit},
        {"5 constant reproduction", constant_reproduction},
        {"6 synthetic epidemic", synthetic_epidemic},
        {"7 moving average zero day", moving_average_zero_day},
        {"8 preset integrity", preset_integrity},
        {"9 performance and determinism", performance_and_determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
