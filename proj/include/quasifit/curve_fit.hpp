/**
 * @file curve_fit.hpp
 * @brief Least-squares fitting of a 29-control-point piecewise curve to a
 *        daily distribution, and selection of the segmentation point.
 *
 * Pipeline for one candidate omega:
 *   points (k, f_k) -> cumulative chord-length parameters -> design matrix
 *   -> ridge-regularized normal equations -> dense uniform sampling of the
 *   curve -> day-grid discretization -> mean square error.
 *
 * fit() runs that pipeline over a grid of omega candidates and keeps the one
 * with the smallest error (smaller omega on exact ties).
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quasifit/spline_basis.hpp"

namespace quasifit {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

using ControlPolygon = std::array<Point2, kPiecewiseCount>;

struct PiecewiseCurve {
    double omega = 0.5;
    ControlPolygon controls{};

    Point2 operator()(double t) const;
};

/// Dense N x 29 matrix of piecewise basis values, row-major.
class DesignMatrix {
public:
    DesignMatrix(std::size_t rows, double omega);

    std::size_t rows() const { return rows_; }
    static constexpr std::size_t cols() { return kPiecewiseCount; }
    double omega() const { return omega_; }

    double operator()(std::size_t row, std::size_t col) const { return entries_[row * cols() + col]; }
    double& operator()(std::size_t row, std::size_t col) { return entries_[row * cols() + col]; }
    std::span<const double> row(std::size_t r) const { return {entries_.data() + r * cols(), cols()}; }

private:
    std::size_t rows_;
    double omega_;
    std::vector<double> entries_;
};

struct FitCandidate {
    PiecewiseCurve curve;
    std::vector<double> discretized;
    double mse = 0.0;
};

struct OmegaScore {
    double omega = 0.0;
    double mse = 0.0;  ///< +infinity when the candidate was ill-conditioned
};

struct FitResult {
    PiecewiseCurve curve;
    std::vector<double> discretized;
    double mse = 0.0;
    std::vector<OmegaScore> omega_grid_scores;
};

/// Relative ridge applied to the normal matrix: lambda = kRidge * trace / 29.
inline constexpr double kRidge = 1e-10;
/// Accepted bound on ||A^T A C - A^T P||_inf / ||A^T P||_inf.
inline constexpr double kNormalResidualTolerance = 1e-8;

/// (k, f_k) for k = 1..N.
std::vector<Point2> day_points(std::span<const double> values);

/// Cumulative chord-length parameters, normalized to [0, 1].
std::vector<double> chord_length_params(std::span<const Point2> points);

DesignMatrix assemble_design(std::span<const double> params, double omega);

/// Solves (A^T A + lambda I) C = A^T P per coordinate. Returns nullopt when the
/// factorization fails or the normal-equation residual exceeds
/// kNormalResidualTolerance.
std::optional<ControlPolygon> solve_normal_equations(const DesignMatrix& design,
                                                     std::span<const Point2> points);

/// max over x and y of ||A^T A C - A^T P||_inf / ||A^T P||_inf
double normal_residual_ratio(const DesignMatrix& design, std::span<const Point2> points,
                             const ControlPolygon& controls);

/// B(t_i) at t_i = (i - 1) / (n - 1), i = 1..n.
std::vector<Point2> sample_curve(const PiecewiseCurve& curve, std::size_t n);

/// For each day k = 1..N, the y of the sample with the largest x strictly
/// below k (ties: the later sample). Days with no such sample take the first
/// sample's y.
std::vector<double> discretize(std::span<const Point2> samples, std::size_t days);

double mse(std::span<const double> signal, std::span<const double> data);

/// One grid point of the omega search. nullopt marks an ill-conditioned
/// candidate. Throws quasifit::Error on invalid arguments.
std::optional<FitCandidate> fit_fixed_omega(std::span<const double> data, double omega,
                                            std::size_t samples);

/// Grid search over omega. Throws quasifit::Error if the grid is empty, holds
/// a value outside (0, 1), or every candidate is ill-conditioned.
FitResult fit(std::span<const double> data, std::span<const double> omega_grid, std::size_t samples);

/// lo, lo + step, ... up to hi inclusive, each rounded to 12 decimals so that
/// 0.1 + 7 * 0.01 prints as 0.17.
std::vector<double> make_omega_grid(double lo, double hi, double step);

}  // namespace quasifit
