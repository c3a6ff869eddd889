/**
 * @file spline_basis.hpp
 * @brief Quintic quasi-uniform B-spline basis and its two-piece extension.
 *
 * The quasi-uniform basis has 15 degree-5 functions over the clamped knot
 * vector [0 x6, 0.1, ..., 0.9, 1 x6]. The piecewise basis joins two copies of
 * it at a segmentation point omega in (0, 1): the left copy is rescaled onto
 * [0, omega), the right copy onto [omega, 1], and the two share control
 * point 14, giving 29 functions in total and a curve that is continuous at
 * omega by construction.
 *
 * Production evaluation uses Cox-de Boor recursion over the explicit knot
 * vector. The hand-expanded piecewise polynomials are kept as
 * eval_basis_closed_form() so the two routes can be checked against each
 * other.
 *
 * Convention: support intervals are half-open [k_j, k_{j+1}) except the last
 * non-empty span, which is closed at t = 1 so that the last function equals 1
 * there.
 */
#pragma once

#include <array>
#include <cstddef>

namespace quasifit {

inline constexpr int kDegree = 5;
inline constexpr int kOrder = kDegree + 1;
inline constexpr int kQuasiCount = 15;
inline constexpr int kPiecewiseCount = 2 * kQuasiCount - 1;
inline constexpr int kKnotCount = kQuasiCount + kOrder;
inline constexpr int kJunctionIndex = kQuasiCount - 1;

using KnotVector = std::array<double, kKnotCount>;
using BasisVector15 = std::array<double, kQuasiCount>;
using PiecewiseBasisVector29 = std::array<double, kPiecewiseCount>;

/// Nonzero window of a basis evaluation: values[j] belongs to basis
/// function first + j.
struct BasisSpan {
    int first = 0;
    std::array<double, kOrder> values{};
};

/// [0 x6, 0.1, 0.2, ..., 0.9, 1 x6]
const KnotVector& make_knot_vector();

/// Degree-5 basis function i at t by the textbook Cox-de Boor recursion.
/// Throws quasifit::Error when i is not in 0..14 or t is not in [0, 1].
double eval_basis_recursive(int i, double t);

/// Same function from the expanded per-interval polynomials. Functions 6..9
/// are translates of function 5; 10..14 are reflections of 4..0.
double eval_basis_closed_form(int i, double t);

/// The six functions that can be nonzero at t, by the triangular form of the
/// Cox-de Boor recursion.
BasisSpan eval_quasi_span(double t);

BasisVector15 eval_all_quasi(double t);

/// Nonzero window of the 29-function piecewise basis at t.
/// Throws quasifit::Error when omega is not in (0, 1) or t not in [0, 1].
BasisSpan eval_piecewise_span(double t, double omega);

PiecewiseBasisVector29 eval_all_piecewise(double t, double omega);

}  // namespace quasifit
