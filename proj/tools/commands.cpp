#include "commands.hpp"

#include <CLI11.hpp>

#include <cctype>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quasifit/error.hpp"
#include "quasifit/report.hpp"
#include "quasifit/spline_basis.hpp"

namespace quasifit::cli {

namespace {

namespace fs = std::filesystem;

std::vector<RawSeries> read_input(const std::string& path) {
    if (path.empty()) throw Error("no --input file given");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open input file '" + path + "'");
    return parse_csv(in);
}

const RawSeries& find_column(const std::vector<RawSeries>& series, const std::string& column,
                             const std::string& path) {
    const auto it = std::find_if(series.begin(), series.end(), [&](const RawSeries& s) { return s.label == column; });
    if (it == series.end()) {
        std::string available;
        for (const RawSeries& s : series) available += (available.empty() ? "" : ", ") + s.label;
        throw Error("column '" + column + "' not found in " + path + " (available: " + available + ")");
    }
    return *it;
}

std::vector<WindowSpec> load_presets(const CliConfig& config) {
    if (!config.presets_path) return builtin_presets();
    std::ifstream in(*config.presets_path, std::ios::binary);
    if (!in) throw Error("cannot open preset file '" + *config.presets_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_presets(buf.str());
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) throw Error("failed writing '" + path + "'");
}

std::string safe_name(std::string_view label) {
    std::string out;
    for (char c : label) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
        out += keep ? c : '_';
    }
    return out.empty() ? "series" : out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void print_summary(std::ostream& out, const FitReport& r) {
    out << r.label << ": window " << format_iso_date(r.window.begin) << ".." << format_iso_date(r.window.end)
        << " (" << r.window.days() << " days)\n"
        << "  omega " << format_double(r.omega) << "  MSE " << format_double(r.mse) << "\n"
        << "  mean day " << format_double(r.mean_day) << " (" << format_iso_date(r.mean_date) << ")  Var "
        << format_double(r.variance) << "\n"
        << "  peaks";
    if (r.peaks.empty()) out << " none";
    for (const Peak& p : r.peaks) out << " day " << p.day;
    out << "\n";
}

FitOptions checked_options(const CliConfig& config) {
    const FitOptions& o = config.options;
    if (!(o.omega_step > 0.0)) throw Error("--omega-step must be positive");
    if (!(o.omega_min > 0.0 && o.omega_max < 1.0 && o.omega_min <= o.omega_max)) {
        throw Error("--omega-min/--omega-max must satisfy 0 < min <= max < 1");
    }
    if (o.samples && *o.samples < 2) throw Error("--samples must be at least 2");
    if (!(o.prominence >= 0.0 && o.prominence <= 1.0)) throw Error("--prominence must lie in [0, 1]");
    return o;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "quasifit: error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

WindowSpec resolve_window(const CliConfig& config, Date first_raw) {
    WindowSpec w;
    bool have_begin = false, have_end = false;
    if (config.country) {
        const std::vector<WindowSpec> presets = load_presets(config);
        const std::optional<WindowSpec> preset = find_preset(presets, *config.country);
        if (!preset) throw Error("no window preset for country '" + *config.country + "'");
        w = *preset;
        have_begin = true;
        // An explicit --days re-derives the end from the preset's begin.
        have_end = !config.days.has_value();
    }
    if (config.begin) {
        w.begin = parse_iso_date(*config.begin);
        have_begin = true;
    }
    if (config.end) {
        w.end = parse_iso_date(*config.end);
        have_end = true;
    }
    const long days = config.days.value_or(kDefaultDays);
    if (have_begin && have_end) {
        if (config.days && w.days() != *config.days) {
            throw Error("window " + format_iso_date(w.begin) + ".." + format_iso_date(w.end) + " spans " +
                        std::to_string(w.days()) + " days but --days is " + std::to_string(*config.days));
        }
    } else if (have_begin) {
        w.end = add_days(w.begin, days - 1);
    } else if (have_end) {
        w.begin = add_days(w.end, -(days - 1));
    } else {
        w.begin = add_days(first_raw, SmoothedSeries::kHalfWindow);
        w.end = add_days(w.begin, days - 1);
    }
    if (w.end < w.begin) throw Error("window end precedes its begin");
    if (w.days() < kPiecewiseCount) {
        throw Error("window spans " + std::to_string(w.days()) + " days; at least 29 are needed");
    }
    return w;
}

int run_fit(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (config.columns.empty()) throw Error("no --column given");
        const FitOptions options = checked_options(config);
        const std::vector<RawSeries> series = read_input(config.input);
        const RawSeries& raw = find_column(series, config.columns.front(), config.input);
        const WindowSpec window = resolve_window(config, raw.entries.front().date);

        const SeriesAnalysis a = analyze_series(raw, window, options);
        const std::string stem = safe_name(raw.label);
        const std::string json_path = config.json_out.value_or(stem + ".json");
        const std::string svg_path = config.svg_out.value_or(stem + ".svg");
        write_file(json_path, emit_json(a.report));
        write_file(svg_path, emit_panel_svg(a.histogram.f, a.quasi.values, raw.label,
                                            {a.quasi.variance, a.fit.curve.omega}));
        print_summary(out, a.report);
        out << "  wrote " << json_path << ", " << svg_path << "\n";
        return 0;
    });
}

int run_compare(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (config.columns.size() < 2) {
            throw Error("overlay needs >=2 columns, got " + std::to_string(config.columns.size()));
        }
        const FitOptions options = checked_options(config);
        const std::vector<RawSeries> series = read_input(config.input);
        std::vector<const RawSeries*> selected;
        for (const std::string& c : config.columns) selected.push_back(&find_column(series, c, config.input));
        const WindowSpec window = resolve_window(config, selected.front()->entries.front().date);

        const fs::path json_path = config.json_out.value_or("compare.json");
        const std::string svg_path = config.svg_out.value_or("compare.svg");
        std::vector<FitReport> reports;
        std::vector<NamedCurve> curves;
        std::vector<std::string> written;
        for (const RawSeries* raw : selected) {
            const SeriesAnalysis a = analyze_series(*raw, window, options);
            const fs::path report_path =
                json_path.parent_path() / (json_path.stem().string() + "_" + safe_name(raw->label) + ".json");
            write_file(report_path.string(), emit_json(a.report));
            written.push_back(report_path.string());
            print_summary(out, a.report);
            curves.push_back({raw->label, a.quasi.values});
            reports.push_back(a.report);
        }
        std::string title = "Quasi-distribution fits";
        if (!window.country.empty()) title += ": " + window.country;
        write_file(svg_path, emit_overlay_svg(curves, title));
        write_file(json_path.string(), emit_comparison_json(reports));
        out << "  wrote " << svg_path << ", " << json_path.string();
        for (const std::string& p : written) out << ", " << p;
        out << "\n";
        return 0;
    });
}

int run_basis(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::size_t n = config.basis_samples;
        if (n < 2) throw Error("--samples must be at least 2");
        if (config.basis_omega && !(*config.basis_omega > 0.0 && *config.basis_omega < 1.0)) {
            throw Error("--omega must lie in (0, 1)");
        }
        const int count = config.basis_omega ? kPiecewiseCount : kQuasiCount;

        std::string csv = "t";
        for (int i = 0; i < count; ++i) csv += ",N" + std::to_string(i);
        csv += '\n';
        char buf[32];
        for (std::size_t r = 0; r < n; ++r) {
            const double t = static_cast<double>(r) / static_cast<double>(n - 1);
            std::snprintf(buf, sizeof buf, "%.17g", t);
            csv += buf;
            if (config.basis_omega) {
                for (double v : eval_all_piecewise(t, *config.basis_omega)) {
                    std::snprintf(buf, sizeof buf, ",%.17g", v);
                    csv += buf;
                }
            } else {
                for (double v : eval_all_quasi(t)) {
                    std::snprintf(buf, sizeof buf, ",%.17g", v);
                    csv += buf;
                }
            }
            csv += '\n';
        }
        if (config.basis_out) {
            write_file(*config.basis_out, csv);
        } else {
            out << csv;
        }
        return 0;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig config;
    CLI::App app{"Quasi-distribution fitting of daily-count series with piecewise quintic B-splines"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", config.input, "daily-count CSV (header: date,<columns...>)")->required();
        sub->add_option("--country", config.country, "window preset name");
        sub->add_option("--presets", config.presets_path, "preset CSV (country,begin,end) replacing the built-in one");
        sub->add_option("--begin", config.begin, "first day of the window (YYYY-MM-DD)");
        sub->add_option("--end", config.end, "last day of the window (YYYY-MM-DD)");
        sub->add_option("--days", config.days, "window length N (default 500)")->check(CLI::Range(29L, 1000000L));
        sub->add_option("--omega-min", config.options.omega_min, "smallest segmentation point")->capture_default_str();
        sub->add_option("--omega-max", config.options.omega_max, "largest segmentation point")->capture_default_str();
        sub->add_option("--omega-step", config.options.omega_step, "segmentation grid step")->capture_default_str();
        sub->add_option("--samples", config.options.samples, "curve samples for discretization (default 20*N)");
        sub->add_option("--prominence", config.options.prominence, "minimum peak prominence, fraction of max")
            ->capture_default_str();
        sub->add_option("--json-out", config.json_out, "JSON output path");
        sub->add_option("--svg-out", config.svg_out, "SVG output path");
    };

    CLI::App* fit = app.add_subcommand("fit", "fit one column and write a JSON report and an SVG panel");
    add_common(fit);
    fit->add_option("--column", config.columns, "column to fit")->required()->expected(1);

    CLI::App* compare = app.add_subcommand("compare", "fit several columns and overlay their quasi-distributions");
    add_common(compare);
    compare->add_option("--columns,--column", config.columns, "columns to compare (comma separated)")
        ->required()
        ->delimiter(',');

    CLI::App* basis = app.add_subcommand("basis", "tabulate the quasi-uniform (or piecewise) basis as CSV");
    basis->add_option("--samples", config.basis_samples, "number of rows")->capture_default_str();
    basis->add_option("--omega", config.basis_omega, "segmentation point; emits the 29-function basis");
    basis->add_option("--output", config.basis_out, "CSV output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    if (fit->parsed()) return run_fit(config, out, err);
    if (compare->parsed()) return run_compare(config, out, err);
    return run_basis(config, out, err);
}

}  // namespace quasifit::cli
