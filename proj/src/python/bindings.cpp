#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "quasifit/curve_fit.hpp"
#include "quasifit/error.hpp"
#include "quasifit/ingest.hpp"
#include "quasifit/pipeline.hpp"
#include "quasifit/quasi_dist.hpp"
#include "quasifit/report.hpp"
#include "quasifit/spline_basis.hpp"

namespace py = pybind11;
using namespace quasifit;

namespace {

std::vector<std::tuple<double, double>> points_of(std::span<const Point2> controls) {
    std::vector<std::tuple<double, double>> out;
    for (const Point2& p : controls) out.emplace_back(p.x, p.y);
    return out;
}

py::dict fit_dict(const FitResult& r) {
    py::dict d;
    d["omega"] = r.curve.omega;
    d["mse"] = r.mse;
    d["discretized"] = r.discretized;
    d["controls"] = points_of(r.curve.controls);
    py::list scores;
    for (const OmegaScore& s : r.omega_grid_scores) scores.append(py::make_tuple(s.omega, s.mse));
    d["omega_grid_scores"] = scores;
    return d;
}

py::dict quasi_dict(const QuasiDistribution& q) {
    py::dict d;
    d["values"] = q.values;
    d["gamma"] = q.gamma;
    d["mean"] = q.mean;
    d["variance"] = q.variance;
    py::list peaks;
    for (const Peak& p : q.peaks) peaks.append(py::make_tuple(p.day, p.height, p.prominence));
    d["peaks"] = peaks;
    d["min_value"] = q.min_value;
    d["negative_mass"] = q.negative_mass;
    return d;
}

FitOptions options(double omega_min, double omega_max, double omega_step, std::optional<std::size_t> samples,
                   double prominence) {
    FitOptions o;
    o.omega_min = omega_min;
    o.omega_max = omega_max;
    o.omega_step = omega_step;
    o.samples = samples;
    o.prominence = prominence;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Piecewise quintic B-spline fitting of daily-count series";
    py::register_exception<Error>(m, "QuasifitError", PyExc_ValueError);

    m.def("knot_vector", [] {
        const KnotVector& k = make_knot_vector();
        return std::vector<double>(k.begin(), k.end());
    });
    m.def("eval_basis_recursive", &eval_basis_recursive, py::arg("i"), py::arg("t"));
    m.def("eval_basis_closed_form", &eval_basis_closed_form, py::arg("i"), py::arg("t"));
    m.def("eval_all_quasi", &eval_all_quasi, py::arg("t"));
    m.def("eval_all_piecewise", &eval_all_piecewise, py::arg("t"), py::arg("omega"));

    m.def("omega_grid", &make_omega_grid, py::arg("lo") = 0.1, py::arg("hi") = 0.9, py::arg("step") = 0.01);
    m.def(
        "fit_fixed_omega",
        [](const std::vector<double>& data, double omega, std::size_t samples) -> py::object {
            const auto c = fit_fixed_omega(data, omega, samples);
            if (!c) return py::none();
            py::dict d;
            d["omega"] = c->curve.omega;
            d["mse"] = c->mse;
            d["discretized"] = c->discretized;
            d["controls"] = points_of(c->curve.controls);
            return d;
        },
        py::arg("data"), py::arg("omega"), py::arg("samples"));
    m.def(
        "fit",
        [](const std::vector<double>& data, std::optional<std::vector<double>> grid,
           std::optional<std::size_t> samples) {
            const std::vector<double> g = grid.value_or(make_omega_grid(0.1, 0.9, 0.01));
            return fit_dict(fit(data, g, samples.value_or(kSamplesPerDay * data.size())));
        },
        py::arg("data"), py::arg("grid") = py::none(), py::arg("samples") = py::none());

    m.def(
        "quasi_distribution",
        [](const std::vector<double>& signal, double prominence) {
            return quasi_dict(make_quasi_distribution(signal, prominence));
        },
        py::arg("signal"), py::arg("prominence") = kDefaultProminence);
    m.def(
        "find_peaks",
        [](const std::vector<double>& values, double prominence) {
            py::list out;
            for (const Peak& p : find_peaks(values, prominence)) out.append(py::make_tuple(p.day, p.height, p.prominence));
            return out;
        },
        py::arg("values"), py::arg("prominence") = kDefaultProminence);

    m.def("moving_average_7", [](const std::vector<double>& values) {
        RawSeries raw{"series", {}};
        const Date first = parse_iso_date("2000-01-01");
        for (std::size_t i = 0; i < values.size(); ++i) raw.entries.push_back({add_days(first, static_cast<long>(i)), values[i]});
        std::vector<double> out;
        for (const DailyValue& e : moving_average_7(raw).entries) out.push_back(e.value);
        return out;
    });
    m.def("presets", [] {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const WindowSpec& w : builtin_presets()) out.emplace_back(w.country, format_iso_date(w.begin), format_iso_date(w.end));
        return out;
    });

    m.def(
        "analyze_csv",
        [](const std::string& csv, const std::string& column, const std::string& begin, const std::string& end,
           double omega_min, double omega_max, double omega_step, std::optional<std::size_t> samples,
           double prominence) {
            const std::vector<RawSeries> series = parse_csv(csv);
            for (const RawSeries& s : series) {
                if (s.label != column) continue;
                const WindowSpec window{"", parse_iso_date(begin), parse_iso_date(end)};
                const SeriesAnalysis a =
                    analyze_series(s, window, options(omega_min, omega_max, omega_step, samples, prominence));
                py::dict d;
                d["histogram"] = a.histogram.f;
                d["fit"] = fit_dict(a.fit);
                d["quasi"] = quasi_dict(a.quasi);
                d["report_json"] = emit_json(a.report);
                d["panel_svg"] = emit_panel_svg(a.histogram.f, a.quasi.values, s.label, {a.quasi.variance, a.fit.curve.omega});
                return d;
            }
            throw Error("column '" + column + "' not found");
        },
        py::arg("csv"), py::arg("column"), py::arg("begin"), py::arg("end"), py::arg("omega_min") = 0.1,
        py::arg("omega_max") = 0.9, py::arg("omega_step") = 0.01, py::arg("samples") = py::none(),
        py::arg("prominence") = kDefaultProminence);

    m.def("normalize_report_json", [](const std::string& text) { return emit_json(parse_report_json(text)); },
          py::arg("text"));
    m.def(
        "panel_svg",
        [](const std::vector<double>& histogram, const std::vector<double>& fitted, const std::string& label,
           double variance, double omega) { return emit_panel_svg(histogram, fitted, label, {variance, omega}); },
        py::arg("histogram"), py::arg("fitted"), py::arg("label"), py::arg("variance") = 0.0, py::arg("omega") = 0.5);
    m.def(
        "overlay_svg",
        [](const std::vector<std::pair<std::string, std::vector<double>>>& curves, const std::string& title) {
            std::vector<NamedCurve> named;
            for (const auto& [label, values] : curves) named.push_back({label, values});
            return emit_overlay_svg(named, title);
        },
        py::arg("curves"), py::arg("title") = "");

#define QUASIFIT_STR(x) #x
#define QUASIFIT_XSTR(x) QUASIFIT_STR(x)
    m.attr("__version__") = QUASIFIT_XSTR(VERSION_INFO);
}
