#pragma once

#include <cstddef>
#include <optional>

#include "quasifit/curve_fit.hpp"
#include "quasifit/ingest.hpp"
#include "quasifit/quasi_dist.hpp"
#include "quasifit/report.hpp"

namespace quasifit {

struct FitOptions {
    double omega_min = 0.10;
    double omega_max = 0.90;
    double omega_step = 0.01;
    /// Curve samples used for discretization; 20 * N when unset.
    std::optional<std::size_t> samples;
    double prominence = kDefaultProminence;
};

inline constexpr std::size_t kSamplesPerDay = 20;

struct SeriesAnalysis {
    WindowSpec window;
    HistogramDistribution histogram;
    FitResult fit;
    QuasiDistribution quasi;
    FitReport report;
};

/// Smooth, window, normalize, fit and summarize one raw series.
SeriesAnalysis analyze_series(const RawSeries& raw, const WindowSpec& window, const FitOptions& options);

/// Same, starting from an already-built histogram distribution.
SeriesAnalysis analyze_histogram(std::string label, const WindowSpec& window, HistogramDistribution histogram,
                                 const FitOptions& options);

}  // namespace quasifit
