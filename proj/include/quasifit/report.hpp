/**
 * @file report.hpp
 * @brief JSON fit reports and static SVG plots.
 *
 * Output is byte-deterministic: JSON keys are emitted in a fixed order and
 * SVG coordinates are printed with 6 significant digits.
 *
 * Colors: the histogram is always green; fitted curves are colored by the
 * role inferred from their label (confirmed = red, recovered = blue,
 * fatality = black, anything else from a fixed fallback palette).
 */
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quasifit/curve_fit.hpp"
#include "quasifit/ingest.hpp"
#include "quasifit/quasi_dist.hpp"

namespace quasifit {

enum class SeriesRole { confirmed, recovered, fatality, other };

/// Case-insensitive substring match, checked in order: "death"/"fatal"/"died"
/// -> fatality, "recover" -> recovered, "confirm"/"case" -> confirmed.
SeriesRole role_for_label(std::string_view label);
std::string_view role_name(SeriesRole role);
std::string_view role_color(SeriesRole role);

struct FitReport {
    std::string label;
    WindowSpec window;
    double omega = 0.0;
    double mse = 0.0;
    double gamma = 0.0;
    double mean_day = 0.0;
    Date mean_date;
    double variance = 0.0;
    std::vector<Peak> peaks;
    double min_value = 0.0;
    double negative_mass = 0.0;
    std::vector<OmegaScore> omega_grid_scores;
    ControlPolygon controls{};
    std::vector<double> quasi_distribution;
};

/// mean_date is window.begin advanced by round(mean_day - 1) days.
FitReport make_report(std::string label, const WindowSpec& window, const FitResult& fit,
                      const QuasiDistribution& quasi);

/// Ill-conditioned grid scores (+infinity) are written as null.
std::string emit_json(const FitReport& report);
FitReport parse_report_json(std::string_view text);

/// Per-curve peak listing for side-by-side reading of several series.
std::string emit_comparison_json(std::span<const FitReport> reports);

struct PanelAnnotation {
    double variance = 0.0;
    double omega = 0.0;
};

/// Histogram (green) and fitted quasi-distribution (role color) on shared
/// axes. Throws quasifit::Error on a length mismatch or empty input.
std::string emit_panel_svg(std::span<const double> histogram, std::span<const double> fitted,
                           std::string_view label, const PanelAnnotation& annotation);

struct NamedCurve {
    std::string label;
    std::vector<double> values;
};

/// All curves on one set of axes with a legend. Needs at least two curves
/// of equal length.
std::string emit_overlay_svg(std::span<const NamedCurve> curves, std::string_view title = {});

}  // namespace quasifit
