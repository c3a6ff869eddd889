#include "quasifit/curve_fit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "quasifit/error.hpp"

namespace quasifit {

namespace {

using NormalMatrix = Eigen::Matrix<double, kPiecewiseCount, kPiecewiseCount>;
using NormalVector = Eigen::Matrix<double, kPiecewiseCount, 2>;

struct NormalSystem {
    NormalMatrix lhs = NormalMatrix::Zero();
    NormalVector rhs = NormalVector::Zero();
};

NormalSystem accumulate(const DesignMatrix& design, std::span<const Point2> points) {
    NormalSystem sys;
    for (std::size_t r = 0; r < design.rows(); ++r) {
        const auto row = design.row(r);
        for (std::size_t i = 0; i < DesignMatrix::cols(); ++i) {
            const double a = row[i];
            if (a == 0.0) continue;
            sys.rhs(i, 0) += a * points[r].x;
            sys.rhs(i, 1) += a * points[r].y;
            for (std::size_t j = 0; j < DesignMatrix::cols(); ++j) {
                if (row[j] != 0.0) sys.lhs(i, j) += a * row[j];
            }
        }
    }
    return sys;
}

double residual_ratio(const NormalSystem& sys, const ControlPolygon& controls) {
    NormalVector c;
    for (int i = 0; i < kPiecewiseCount; ++i) {
        c(i, 0) = controls[i].x;
        c(i, 1) = controls[i].y;
    }
    const NormalVector residual = sys.lhs * c - sys.rhs;
    double ratio = 0.0;
    for (int col = 0; col < 2; ++col) {
        const double num = residual.col(col).cwiseAbs().maxCoeff();
        const double den = sys.rhs.col(col).cwiseAbs().maxCoeff();
        if (den == 0.0) {
            if (num != 0.0) ratio = std::max(ratio, std::numeric_limits<double>::infinity());
        } else {
            ratio = std::max(ratio, num / den);
        }
    }
    return ratio;
}

void check_same_rows(const DesignMatrix& design, std::span<const Point2> points) {
    if (design.rows() != points.size()) {
        throw Error("design has " + std::to_string(design.rows()) + " rows but " +
                    std::to_string(points.size()) + " data points were given");
    }
}

}  // namespace

Point2 PiecewiseCurve::operator()(double t) const {
    const BasisSpan span = eval_piecewise_span(t, omega);
    Point2 p;
    for (int j = 0; j < kOrder; ++j) {
        const Point2& c = controls[span.first + j];
        p.x += span.values[j] * c.x;
        p.y += span.values[j] * c.y;
    }
    return p;
}

DesignMatrix::DesignMatrix(std::size_t rows, double omega)
    : rows_(rows), omega_(omega), entries_(rows * cols(), 0.0) {}

std::vector<Point2> day_points(std::span<const double> values) {
    std::vector<Point2> points(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        points[k] = {static_cast<double>(k + 1), values[k]};
    }
    return points;
}

std::vector<double> chord_length_params(std::span<const Point2> points) {
    if (points.size() < 2) throw Error("chord-length parameterization needs at least 2 points");
    std::vector<double> params(points.size(), 0.0);
    for (std::size_t k = 1; k < points.size(); ++k) {
        const double chord = std::hypot(points[k].x - points[k - 1].x, points[k].y - points[k - 1].y);
        if (chord == 0.0) {
            throw Error("coincident consecutive points at index " + std::to_string(k));
        }
        params[k] = params[k - 1] + chord;
    }
    const double total = params.back();
    if (!(total > 0.0) || !std::isfinite(total)) throw Error("zero total chord length");
    for (double& t : params) t /= total;
    params.back() = 1.0;
    return params;
}

DesignMatrix assemble_design(std::span<const double> params, double omega) {
    if (!(omega > 0.0 && omega < 1.0)) {
        throw Error("segmentation point " + std::to_string(omega) + " outside (0, 1)");
    }
    DesignMatrix design(params.size(), omega);
    for (std::size_t r = 0; r < params.size(); ++r) {
        const BasisSpan span = eval_piecewise_span(params[r], omega);
        for (int j = 0; j < kOrder; ++j) design(r, span.first + j) = span.values[j];
    }
    return design;
}

std::optional<ControlPolygon> solve_normal_equations(const DesignMatrix& design,
                                                     std::span<const Point2> points) {
    check_same_rows(design, points);
    const NormalSystem sys = accumulate(design, points);
    const double lambda = kRidge * sys.lhs.trace() / kPiecewiseCount;
    NormalMatrix regularized = sys.lhs;
    regularized.diagonal().array() += lambda;

    const Eigen::LLT<NormalMatrix> llt(regularized);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const NormalVector solution = llt.solve(sys.rhs);
    if (!solution.allFinite()) return std::nullopt;

    ControlPolygon controls;
    for (int i = 0; i < kPiecewiseCount; ++i) controls[i] = {solution(i, 0), solution(i, 1)};
    if (!(residual_ratio(sys, controls) <= kNormalResidualTolerance)) return std::nullopt;
    return controls;
}

double normal_residual_ratio(const DesignMatrix& design, std::span<const Point2> points,
                             const ControlPolygon& controls) {
    check_same_rows(design, points);
    return residual_ratio(accumulate(design, points), controls);
}

std::vector<Point2> sample_curve(const PiecewiseCurve& curve, std::size_t n) {
    if (n < 2) throw Error("curve sampling needs n >= 2, got " + std::to_string(n));
    std::vector<Point2> samples(n);
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) samples[i] = curve(static_cast<double>(i) / denom);
    return samples;
}

std::vector<double> discretize(std::span<const Point2> samples, std::size_t days) {
    if (samples.empty()) throw Error("cannot discretize an empty sample sequence");
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return samples[a].x < samples[b].x; });

    std::vector<double> out(days);
    for (std::size_t k = 1; k <= days; ++k) {
        const double day = static_cast<double>(k);
        // First sample (in x order) with x >= day; the one before it has the
        // largest x below day and, among equal x, the largest index.
        const auto it = std::partition_point(order.begin(), order.end(),
                                             [&](std::size_t i) { return samples[i].x < day; });
        out[k - 1] = it == order.begin() ? samples.front().y : samples[*std::prev(it)].y;
    }
    return out;
}

double mse(std::span<const double> signal, std::span<const double> data) {
    if (signal.size() != data.size()) {
        throw Error("length mismatch: " + std::to_string(signal.size()) + " vs " +
                    std::to_string(data.size()));
    }
    if (signal.empty()) throw Error("mse of empty sequences");
    double sum = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i) {
        const double d = signal[i] - data[i];
        sum += d * d;
    }
    return sum / static_cast<double>(signal.size());
}

std::optional<FitCandidate> fit_fixed_omega(std::span<const double> data, double omega,
                                            std::size_t samples) {
    const std::vector<Point2> points = day_points(data);
    const std::vector<double> params = chord_length_params(points);
    const DesignMatrix design = assemble_design(params, omega);
    std::optional<ControlPolygon> controls = solve_normal_equations(design, points);
    if (!controls) return std::nullopt;

    FitCandidate candidate;
    candidate.curve = {omega, *controls};
    candidate.discretized = discretize(sample_curve(candidate.curve, samples), data.size());
    candidate.mse = mse(candidate.discretized, data);
    if (!std::isfinite(candidate.mse)) return std::nullopt;
    return candidate;
}

FitResult fit(std::span<const double> data, std::span<const double> omega_grid, std::size_t samples) {
    if (omega_grid.empty()) throw Error("omega grid is empty");
    for (double omega : omega_grid) {
        if (!(omega > 0.0 && omega < 1.0)) {
            throw Error("omega candidate " + std::to_string(omega) + " outside (0, 1)");
        }
    }

    FitResult result;
    result.omega_grid_scores.reserve(omega_grid.size());
    std::optional<FitCandidate> best;
    for (double omega : omega_grid) {
        std::optional<FitCandidate> candidate = fit_fixed_omega(data, omega, samples);
        const double score = candidate ? candidate->mse : std::numeric_limits<double>::infinity();
        result.omega_grid_scores.push_back({omega, score});
        if (!candidate) continue;
        const bool better = !best || candidate->mse < best->mse ||
                            (candidate->mse == best->mse && omega < best->curve.omega);
        if (better) best = std::move(candidate);
    }
    if (!best) throw Error("every omega candidate was ill-conditioned");

    result.curve = best->curve;
    result.discretized = std::move(best->discretized);
    result.mse = best->mse;
    return result;
}

std::vector<double> make_omega_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw Error("omega step must be positive");
    if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) {
        throw Error("omega bounds must satisfy 0 < min <= max < 1");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return grid;
}

}  // namespace quasifit
