#include "quasifit/report.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

#include "quasifit/error.hpp"

namespace quasifit {

namespace {

using Json = nlohmann::ordered_json;

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr std::string_view kHistogramColor = "green";
constexpr std::array<std::string_view, 4> kFallbackPalette = {"#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

// Plot frame shared by both figure kinds.
struct Frame {
    static constexpr double width = 800, height = 480;
    static constexpr double left = 70, right = 20, top = 40, bottom = 50;

    std::size_t days = 1;
    double y_lo = 0.0, y_hi = 1.0;

    double px(std::size_t index) const {
        const double w = width - left - right;
        if (days < 2) return left + w / 2;
        return left + w * static_cast<double>(index) / static_cast<double>(days - 1);
    }
    double py(double v) const {
        const double h = height - top - bottom;
        return top + h * (y_hi - v) / (y_hi - y_lo);
    }
};

Frame make_frame(std::size_t days, std::span<const std::span<const double>> series) {
    double lo = 0.0, hi = std::numeric_limits<double>::lowest();
    for (auto s : series) {
        for (double v : s) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    Frame f;
    f.days = days;
    f.y_lo = lo;
    f.y_hi = hi > 0.0 ? 1.05 * hi : 1.0;
    if (f.y_hi <= f.y_lo) f.y_hi = f.y_lo + 1.0;
    return f;
}

double nice_step(double range, int max_ticks) {
    const double raw = range / max_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

void open_svg(std::string& out, std::string_view title) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(Frame::width) +
           "\" height=\"" + num(Frame::height) + "\" viewBox=\"0 0 " + num(Frame::width) + " " +
           num(Frame::height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(Frame::width) + "\" height=\"" + num(Frame::height) +
           "\" fill=\"white\"/>\n";
    out += "<text class=\"title\" x=\"" + num(Frame::width / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           xml_escape(title) + "</text>\n";
}

void draw_axes(std::string& out, const Frame& f) {
    const double x0 = Frame::left, x1 = Frame::width - Frame::right;
    const double y0 = Frame::height - Frame::bottom, y1 = Frame::top;
    out += "<g class=\"axes\" stroke=\"#444\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y0) + "\"/>\n";
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y1) + "\"/>\n";

    // Day ticks (1-based days).
    const double day_step = f.days > 1 ? nice_step(static_cast<double>(f.days - 1), 10) : 1.0;
    for (double d = day_step; d <= static_cast<double>(f.days) + 1e-9; d += day_step) {
        const double x = f.px(static_cast<std::size_t>(d) - 1);
        out += "<line class=\"xtick\" x1=\"" + num(x) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(y0 + 5) + "\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\" stroke=\"none\">" +
               num(d) + "</text>\n";
    }
    const double v_step = nice_step(f.y_hi - f.y_lo, 5);
    for (double v = std::ceil(f.y_lo / v_step) * v_step; v <= f.y_hi + 1e-15; v += v_step) {
        const double y = f.py(v);
        out += "<line class=\"ytick\" x1=\"" + num(x0 - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x0) +
               "\" y2=\"" + num(y) + "\"/>\n";
        out += "<text x=\"" + num(x0 - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\" stroke=\"none\">" +
               num(std::abs(v) < v_step * 1e-9 ? 0.0 : v) + "</text>\n";
    }
    out += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(Frame::height - 10) +
           "\" text-anchor=\"middle\" stroke=\"none\">day</text>\n";
    out += "</g>\n";
}

void draw_polyline(std::string& out, const Frame& f, std::span<const double> values, std::string_view cls,
                   std::string_view color, std::string_view label) {
    out += "<polyline class=\"" + std::string(cls) + "\" data-label=\"" + xml_escape(label) +
           "\" fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ' ';
        out += num(f.px(k)) + "," + num(f.py(values[k]));
    }
    out += "\"/>\n";
}

std::string fit_color(SeriesRole role, std::size_t& fallback_index) {
    if (role != SeriesRole::other) return std::string(role_color(role));
    return std::string(kFallbackPalette[fallback_index++ % kFallbackPalette.size()]);
}

Json peak_json(const Peak& p) {
    return Json{{"day", p.day}, {"height", p.height}, {"prominence", p.prominence}};
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
T get(const Json& j, const char* key) {
    if (!j.contains(key)) throw Error(std::string("report JSON is missing '") + key + "'");
    return j.at(key).get<T>();
}

}  // namespace

SeriesRole role_for_label(std::string_view label) {
    const std::string l = lower(label);
    const auto has = [&](std::string_view needle) { return l.find(needle) != std::string::npos; };
    if (has("death") || has("fatal") || has("died")) return SeriesRole::fatality;
    if (has("recover")) return SeriesRole::recovered;
    if (has("confirm") || has("case")) return SeriesRole::confirmed;
    return SeriesRole::other;
}

std::string_view role_name(SeriesRole role) {
    switch (role) {
        case SeriesRole::confirmed: return "confirmed";
        case SeriesRole::recovered: return "recovered";
        case SeriesRole::fatality: return "fatality";
        case SeriesRole::other: break;
    }
    return "other";
}

std::string_view role_color(SeriesRole role) {
    switch (role) {
        case SeriesRole::confirmed: return "red";
        case SeriesRole::recovered: return "blue";
        case SeriesRole::fatality: return "black";
        case SeriesRole::other: break;
    }
    return kFallbackPalette[0];
}

FitReport make_report(std::string label, const WindowSpec& window, const FitResult& fit,
                      const QuasiDistribution& quasi) {
    FitReport r;
    r.label = std::move(label);
    r.window = window;
    r.omega = fit.curve.omega;
    r.mse = fit.mse;
    r.gamma = quasi.gamma;
    r.mean_day = quasi.mean;
    r.mean_date = add_days(window.begin, std::lround(quasi.mean - 1.0));
    r.variance = quasi.variance;
    r.peaks = quasi.peaks;
    r.min_value = quasi.min_value;
    r.negative_mass = quasi.negative_mass;
    r.omega_grid_scores = fit.omega_grid_scores;
    r.controls = fit.curve.controls;
    r.quasi_distribution = quasi.values;
    return r;
}

std::string emit_json(const FitReport& r) {
    Json j;
    j["label"] = r.label;
    j["window"] = Json{{"country", r.window.country},
                       {"begin", format_iso_date(r.window.begin)},
                       {"end", format_iso_date(r.window.end)},
                       {"days", r.window.days()}};
    j["omega"] = r.omega;
    j["mse"] = r.mse;
    j["gamma"] = r.gamma;
    j["mean_day"] = r.mean_day;
    j["mean_date"] = format_iso_date(r.mean_date);
    j["variance"] = r.variance;
    j["peaks"] = Json::array();
    for (const Peak& p : r.peaks) j["peaks"].push_back(peak_json(p));
    j["diagnostics"] = Json{{"min_value", r.min_value}, {"negative_mass", r.negative_mass}};
    j["omega_grid_scores"] = Json::array();
    for (const OmegaScore& s : r.omega_grid_scores) {
        j["omega_grid_scores"].push_back(Json{{"omega", s.omega}, {"mse", finite_or_null(s.mse)}});
    }
    j["controls"] = Json::array();
    for (const Point2& c : r.controls) j["controls"].push_back(Json::array({c.x, c.y}));
    j["quasi_distribution"] = r.quasi_distribution;
    return j.dump(2) + "\n";
}

FitReport parse_report_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed report JSON: ") + e.what());
    }
    try {
        FitReport r;
        r.label = get<std::string>(j, "label");
        const Json& w = j.at("window");
        r.window = {get<std::string>(w, "country"), parse_iso_date(get<std::string>(w, "begin")),
                    parse_iso_date(get<std::string>(w, "end"))};
        r.omega = get<double>(j, "omega");
        r.mse = get<double>(j, "mse");
        r.gamma = get<double>(j, "gamma");
        r.mean_day = get<double>(j, "mean_day");
        r.mean_date = parse_iso_date(get<std::string>(j, "mean_date"));
        r.variance = get<double>(j, "variance");
        for (const Json& p : j.at("peaks")) {
            r.peaks.push_back({get<std::size_t>(p, "day"), get<double>(p, "height"), get<double>(p, "prominence")});
        }
        const Json& d = j.at("diagnostics");
        r.min_value = get<double>(d, "min_value");
        r.negative_mass = get<double>(d, "negative_mass");
        for (const Json& s : j.at("omega_grid_scores")) {
            const Json& m = s.at("mse");
            r.omega_grid_scores.push_back(
                {get<double>(s, "omega"), m.is_null() ? std::numeric_limits<double>::infinity() : m.get<double>()});
        }
        const Json& controls = j.at("controls");
        if (controls.size() != r.controls.size()) throw Error("report JSON must hold 29 control points");
        for (std::size_t i = 0; i < r.controls.size(); ++i) {
            r.controls[i] = {controls[i].at(0).get<double>(), controls[i].at(1).get<double>()};
        }
        r.quasi_distribution = get<std::vector<double>>(j, "quasi_distribution");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed report JSON: ") + e.what());
    }
}

std::string emit_comparison_json(std::span<const FitReport> reports) {
    Json j;
    j["series"] = Json::array();
    for (const FitReport& r : reports) {
        Json s{{"label", r.label},
               {"role", role_name(role_for_label(r.label))},
               {"omega", r.omega},
               {"mse", r.mse},
               {"mean_day", r.mean_day},
               {"mean_date", format_iso_date(r.mean_date)},
               {"variance", r.variance}};
        s["peaks"] = Json::array();
        for (const Peak& p : r.peaks) s["peaks"].push_back(peak_json(p));
        j["series"].push_back(std::move(s));
    }
    return j.dump(2) + "\n";
}

std::string emit_panel_svg(std::span<const double> histogram, std::span<const double> fitted,
                           std::string_view label, const PanelAnnotation& annotation) {
    if (histogram.size() != fitted.size()) {
        throw Error("panel length mismatch: histogram has " + std::to_string(histogram.size()) +
                    " values, fit has " + std::to_string(fitted.size()));
    }
    if (histogram.empty()) throw Error("panel needs at least one value");

    const std::array<std::span<const double>, 2> series{histogram, fitted};
    const Frame frame = make_frame(histogram.size(), series);
    const SeriesRole role = role_for_label(label);
    std::size_t fallback = 0;

    std::string out;
    open_svg(out, std::string(label) + "  Var=" + num(annotation.variance) + "  \xCF\x89=" + num(annotation.omega));
    draw_axes(out, frame);
    draw_polyline(out, frame, histogram, "histogram", kHistogramColor, std::string(label) + " histogram");
    draw_polyline(out, frame, fitted, "fit role-" + std::string(role_name(role)), fit_color(role, fallback), label);
    out += "</svg>\n";
    return out;
}

std::string emit_overlay_svg(std::span<const NamedCurve> curves, std::string_view title) {
    if (curves.size() < 2) throw Error("overlay needs >=2 curves, got " + std::to_string(curves.size()));
    const std::size_t days = curves.front().values.size();
    std::vector<std::span<const double>> series;
    for (const NamedCurve& c : curves) {
        if (c.values.size() != days) {
            throw Error("overlay curves have mismatched lengths (" + std::to_string(days) + " vs " +
                        std::to_string(c.values.size()) + ")");
        }
        series.emplace_back(c.values);
    }
    if (days == 0) throw Error("overlay curves are empty");
    const Frame frame = make_frame(days, series);

    std::string out;
    open_svg(out, title);
    draw_axes(out, frame);
    std::vector<std::string> colors;
    std::size_t fallback = 0;
    for (const NamedCurve& c : curves) {
        const SeriesRole role = role_for_label(c.label);
        colors.push_back(fit_color(role, fallback));
        draw_polyline(out, frame, c.values, "fit role-" + std::string(role_name(role)), colors.back(), c.label);
    }
    out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double y = Frame::top + 12 + 18 * static_cast<double>(i);
        const double x = Frame::width - Frame::right - 160;
        out += "<g class=\"legend-entry\"><line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 24) +
               "\" y2=\"" + num(y) + "\" stroke=\"" + colors[i] + "\" stroke-width=\"2\"/><text x=\"" +
               num(x + 30) + "\" y=\"" + num(y + 4) + "\">" + xml_escape(curves[i].label) + "</text></g>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace quasifit
