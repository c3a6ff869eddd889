#include "quasifit/quasi_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "quasifit/error.hpp"

namespace quasifit {

Normalized normalize(std::span<const double> signal) {
    const double sum = std::accumulate(signal.begin(), signal.end(), 0.0);
    if (sum == 0.0 || !std::isfinite(sum)) throw Error("cannot normalize a signal with zero sum");
    Normalized out;
    out.gamma = 1.0 / sum;
    out.values.reserve(signal.size());
    for (double v : signal) out.values.push_back(out.gamma * v);
    return out;
}

Moments moments(std::span<const double> values) {
    const double mass = std::accumulate(values.begin(), values.end(), 0.0);
    if (!(std::abs(mass - 1.0) <= 1e-9)) {
        throw Error("moments need values summing to 1, got " + std::to_string(mass));
    }
    Moments m;
    for (std::size_t k = 0; k < values.size(); ++k) m.mean += static_cast<double>(k + 1) * values[k];
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double d = static_cast<double>(k + 1) - m.mean;
        m.variance += d * d * values[k];
    }
    return m;
}

std::vector<Peak> find_peaks(std::span<const double> values, double prominence_frac) {
    if (!(prominence_frac >= 0.0 && prominence_frac <= 1.0)) {
        throw Error("prominence fraction must lie in [0, 1]");
    }
    std::vector<Peak> peaks;
    const std::size_t n = values.size();
    if (n < 3) return peaks;
    const double threshold = prominence_frac * *std::max_element(values.begin(), values.end());

    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(values[i] > values[i - 1])) {
            ++i;
            continue;
        }
        std::size_t plateau_end = i;
        while (plateau_end + 1 < n && values[plateau_end + 1] == values[i]) ++plateau_end;
        if (plateau_end + 1 < n && values[plateau_end + 1] < values[i]) {
            const double height = values[i];
            double left_min = height;
            for (std::size_t k = i + 1; k-- > 0 && values[k] <= height;) left_min = std::min(left_min, values[k]);
            double right_min = height;
            for (std::size_t k = i; k < n && values[k] <= height; ++k) right_min = std::min(right_min, values[k]);
            const double prominence = height - std::max(left_min, right_min);
            if (prominence >= threshold) peaks.push_back({i + 1, height, prominence});
        }
        i = plateau_end + 1;
    }
    return peaks;
}

QuasiDistribution make_quasi_distribution(std::span<const double> signal, double prominence_frac) {
    Normalized norm = normalize(signal);
    const Moments m = moments(norm.values);

    QuasiDistribution q;
    q.gamma = norm.gamma;
    q.mean = m.mean;
    q.variance = m.variance;
    q.peaks = find_peaks(norm.values, prominence_frac);
    q.min_value = norm.values.empty() ? 0.0 : *std::min_element(norm.values.begin(), norm.values.end());
    for (double v : norm.values) {
        if (v < 0.0) q.negative_mass += v;
    }
    q.values = std::move(norm.values);
    return q;
}

}  // namespace quasifit
