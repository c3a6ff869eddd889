#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace quasifit {

/// Default minimum prominence, as a fraction of the maximum value.
inline constexpr double kDefaultProminence = 0.05;

struct Peak {
    std::size_t day = 0;  ///< 1-based day index
    double height = 0.0;
    double prominence = 0.0;
    friend bool operator==(const Peak&, const Peak&) = default;
};

struct Normalized {
    double gamma = 1.0;
    std::vector<double> values;
};

struct Moments {
    double mean = 0.0;      ///< days
    double variance = 0.0;  ///< days^2
};

/// Discretized fit rescaled to unit mass, with its summary statistics.
/// Values may dip below zero where the spline undershoots.
struct QuasiDistribution {
    std::vector<double> values;
    double gamma = 1.0;
    double mean = 0.0;
    double variance = 0.0;
    std::vector<Peak> peaks;
    double min_value = 0.0;
    double negative_mass = 0.0;  ///< sum of the negative values (<= 0)
};

/// gamma = 1 / sum(signal), values = gamma * signal. Throws on a zero sum.
Normalized normalize(std::span<const double> signal);

/// Moments over day index k = 1..N. Input must sum to 1 within 1e-9.
Moments moments(std::span<const double> values);

/// Strict local maxima (a plateau counts once, at its leftmost index) whose
/// topographic prominence is at least prominence_frac * max(values).
/// Sorted by day.
std::vector<Peak> find_peaks(std::span<const double> values, double prominence_frac);

QuasiDistribution make_quasi_distribution(std::span<const double> signal,
                                          double prominence_frac = kDefaultProminence);

}  // namespace quasifit
