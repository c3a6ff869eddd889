#include "quasifit/pipeline.hpp"

#include <string>

#include "quasifit/error.hpp"

namespace quasifit {

SeriesAnalysis analyze_series(const RawSeries& raw, const WindowSpec& window, const FitOptions& options) {
    const SmoothedSeries windowed = extract_window(moving_average_7(raw), window);
    return analyze_histogram(raw.label, window, histogram(windowed), options);
}

SeriesAnalysis analyze_histogram(std::string label, const WindowSpec& window, HistogramDistribution histogram,
                                 const FitOptions& options) {
    if (histogram.size() < static_cast<std::size_t>(kPiecewiseCount)) {
        throw Error("need at least 29 days to fit 29 control points, got " + std::to_string(histogram.size()));
    }
    const std::vector<double> grid = make_omega_grid(options.omega_min, options.omega_max, options.omega_step);
    const std::size_t samples = options.samples.value_or(kSamplesPerDay * histogram.size());

    SeriesAnalysis a;
    a.window = window;
    a.fit = fit(histogram.f, grid, samples);
    a.quasi = make_quasi_distribution(a.fit.discretized, options.prominence);
    a.report = make_report(std::move(label), window, a.fit, a.quasi);
    a.histogram = std::move(histogram);
    return a;
}

}  // namespace quasifit
