#include "quasifit/spline_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quasifit/error.hpp"

namespace quasifit {

namespace {

// Index of the last non-empty knot span, [0.9, 1].
constexpr int kLastSpan = kQuasiCount - 1;

void check_index(int i) {
    if (i < 0 || i >= kQuasiCount) {
        throw Error("basis index " + std::to_string(i) + " out of range 0..14");
    }
}

void check_parameter(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error("basis parameter " + std::to_string(t) + " outside [0, 1]");
    }
}

void check_omega(double omega) {
    if (!(omega > 0.0 && omega < 1.0)) {
        throw Error("segmentation point " + std::to_string(omega) + " outside (0, 1)");
    }
}

double cox_de_boor(int j, int p, double t, const KnotVector& k) {
    if (p == 0) {
        if (k[j] <= t && t < k[j + 1]) return 1.0;
        return (t == k.back() && j == kLastSpan) ? 1.0 : 0.0;
    }
    double value = 0.0;
    if (const double d = k[j + p] - k[j]; d > 0.0) {
        value += (t - k[j]) / d * cox_de_boor(j, p - 1, t, k);
    }
    if (const double d = k[j + p + 1] - k[j + 1]; d > 0.0) {
        value += (k[j + p + 1] - t) / d * cox_de_boor(j + 1, p - 1, t, k);
    }
    return value;
}

int find_span(double t, const KnotVector& k) {
    const auto first = k.begin() + kDegree;
    const auto last = k.begin() + kLastSpan + 1;
    return static_cast<int>(std::upper_bound(first, last, t) - k.begin()) - 1;
}

// Closed-form pieces. T(i) = t - 0.1 i.
double closed_0(double t) {
    const double t1 = t - 0.1;
    return t < 0.1 ? -1e5 * std::pow(t1, 5) : 0.0;
}

double closed_1(double t) {
    const double t0 = t, t1 = t - 0.1, t2 = t - 0.2;
    if (t < 0.1) {
        return 1e4 * (10 * t0 * std::pow(t1, 4) + 5 * t0 * std::pow(t1, 3) * t2 +
                      2.5 * t0 * t1 * t1 * t2 * t2 + 1.25 * t0 * t1 * std::pow(t2, 3) +
                      0.625 * t0 * std::pow(t2, 4));
    }
    if (t < 0.2) return -6250 * std::pow(t2, 5);
    return 0.0;
}

double closed_2(double t) {
    const double t0 = t, t1 = t - 0.1, t2 = t - 0.2, t3 = t - 0.3;
    const double t00 = t0 * t0;
    if (t < 0.1) {
        return -1e4 * (5 * t00 * std::pow(t1, 3) + 5.0 / 2 * t00 * t1 * t1 * t2 +
                       5.0 / 4 * t00 * t1 * t2 * t2 + 5.0 / 8 * t00 * std::pow(t2, 3) +
                       5.0 / 3 * t00 * t1 * t1 * t3 + 5.0 / 6 * t00 * t1 * t2 * t3 +
                       5.0 / 12 * t00 * t2 * t2 * t3 + 5.0 / 9 * t00 * t1 * t3 * t3 +
                       5.0 / 18 * t00 * t2 * t3 * t3 + 5.0 / 27 * t00 * std::pow(t3, 3));
    }
    if (t < 0.2) {
        return 1e4 * (5.0 / 8 * t0 * std::pow(t2, 4) + 5.0 / 12 * t0 * std::pow(t2, 3) * t3 +
                      5.0 / 18 * t0 * t2 * t2 * t3 * t3 + 5.0 / 27 * t0 * t2 * std::pow(t3, 3) +
                      5.0 / 27 * t1 * std::pow(t3, 4));
    }
    if (t < 0.3) return -50000.0 / 27 * std::pow(t3, 5);
    return 0.0;
}

double closed_3(double t) {
    const double t0 = t, t1 = t - 0.1, t2 = t - 0.2, t3 = t - 0.3, t4 = t - 0.4;
    if (t < 0.1) {
        const double c = std::pow(t0, 3);
        return 1e4 * (5.0 / 3 * c * t1 * t1 + 5.0 / 6 * c * t1 * t2 + 5.0 / 12 * c * t2 * t2 +
                      5.0 / 9 * c * t1 * t3 + 5.0 / 18 * c * t2 * t3 + 5.0 / 27 * c * t3 * t3 +
                      5.0 / 12 * c * t1 * t4 + 5.0 / 24 * c * t2 * t4 + 5.0 / 36 * c * t3 * t4 +
                      5.0 / 48 * c * t4 * t4);
    }
    if (t < 0.2) {
        const double c = t0 * t0;
        return -1e4 * (5.0 / 12 * c * std::pow(t2, 3) + 5.0 / 18 * c * t2 * t2 * t3 +
                       5.0 / 27 * c * t2 * t3 * t3 + 5.0 / 27 * t0 * t1 * std::pow(t3, 3) +
                       5.0 / 24 * c * t2 * t2 * t4 + 5.0 / 36 * c * t2 * t3 * t4 +
                       5.0 / 36 * t0 * t1 * t3 * t3 * t4 + 5.0 / 48 * c * t2 * t4 * t4 +
                       5.0 / 48 * t0 * t1 * t3 * t4 * t4 + 5.0 / 48 * t1 * t1 * std::pow(t4, 3));
    }
    if (t < 0.3) {
        return 1e4 * (5.0 / 27 * t0 * std::pow(t3, 4) + 5.0 / 36 * t0 * std::pow(t3, 3) * t4 +
                      5.0 / 48 * t0 * t3 * t3 * t4 * t4 + 5.0 / 48 * t1 * t3 * std::pow(t4, 3) +
                      5.0 / 48 * t2 * std::pow(t4, 4));
    }
    if (t < 0.4) return -3125.0 / 3 * std::pow(t4, 5);
    return 0.0;
}

double closed_4(double t) {
    const double t0 = t, t1 = t - 0.1, t2 = t - 0.2, t3 = t - 0.3, t4 = t - 0.4, t5 = t - 0.5;
    if (t < 0.1) {
        const double c = std::pow(t0, 4);
        return -1e4 * (5.0 / 12 * c * t1 + 5.0 / 24 * c * t2 + 5.0 / 36 * c * t3 +
                       5.0 / 48 * c * t4 + 1.0 / 12 * c * t5);
    }
    if (t < 0.2) {
        const double c3 = std::pow(t0, 3), c2 = t0 * t0;
        return 1e4 * (5.0 / 24 * c3 * t2 * t2 + 5.0 / 36 * c3 * t2 * t3 +
                      5.0 / 36 * c2 * t1 * t3 * t3 + 5.0 / 48 * c3 * t2 * t4 +
                      5.0 / 48 * c2 * t1 * t3 * t4 + 5.0 / 48 * t0 * t1 * t1 * t4 * t4 +
                      1.0 / 12 * c3 * t2 * t5 + 1.0 / 12 * c2 * t1 * t3 * t5 +
                      1.0 / 12 * t0 * t1 * t1 * t4 * t5 + 1.0 / 12 * std::pow(t1, 3) * t5 * t5);
    }
    if (t < 0.3) {
        const double c2 = t0 * t0;
        return -1e4 * (5.0 / 36 * c2 * std::pow(t3, 3) + 5.0 / 48 * c2 * t3 * t3 * t4 +
                       5.0 / 48 * t0 * t1 * t3 * t4 * t4 + 5.0 / 48 * t0 * t2 * std::pow(t4, 3) +
                       1.0 / 12 * c2 * t3 * t3 * t5 + 1.0 / 12 * t0 * t1 * t3 * t4 * t5 +
                       1.0 / 12 * t0 * t2 * t4 * t4 * t5 + 1.0 / 12 * t1 * t1 * t3 * t5 * t5 +
                       1.0 / 12 * t1 * t2 * t4 * t5 * t5 + 1.0 / 12 * t2 * t2 * std::pow(t5, 3));
    }
    if (t < 0.4) {
        // Second term is T0*T4^3*T5, not T0*T3*T5^3.
        return 1e4 * (5.0 / 48 * t0 * std::pow(t4, 4) + 1.0 / 12 * t0 * std::pow(t4, 3) * t5 +
                      1.0 / 12 * t1 * t4 * t4 * t5 * t5 + 1.0 / 12 * t2 * t4 * std::pow(t5, 3) +
                      1.0 / 12 * t3 * std::pow(t5, 4));
    }
    if (t < 0.5) return -2500.0 / 3 * std::pow(t5, 5);
    return 0.0;
}

double closed_5(double t) {
    if (t < 0.0) return 0.0;
    const double t0 = t, t1 = t - 0.1, t2 = t - 0.2, t3 = t - 0.3, t4 = t - 0.4, t5 = t - 0.5,
                 t6 = t - 0.6;
    constexpr double c = 2500.0 / 3;
    if (t < 0.1) return c * std::pow(t0, 5);
    if (t < 0.2) {
        return -c * (std::pow(t0, 4) * t2 + std::pow(t0, 3) * t1 * t3 + t0 * t0 * t1 * t1 * t4 +
                     t0 * std::pow(t1, 3) * t5 + std::pow(t1, 4) * t6);
    }
    if (t < 0.3) {
        return c * (std::pow(t0, 3) * t3 * t3 + t0 * t0 * t1 * t3 * t4 + t0 * t0 * t2 * t4 * t4 +
                    t0 * t1 * t1 * t3 * t5 + t0 * t1 * t2 * t4 * t5 + t0 * t2 * t2 * t5 * t5 +
                    std::pow(t1, 3) * t3 * t6 + t1 * t1 * t2 * t4 * t6 + t1 * t2 * t2 * t5 * t6 +
                    std::pow(t2, 3) * t6 * t6);
    }
    if (t < 0.4) {
        return -c * (t0 * t0 * std::pow(t4, 3) + t0 * t1 * t4 * t4 * t5 + t0 * t2 * t4 * t5 * t5 +
                     t0 * t3 * std::pow(t5, 3) + t1 * t1 * t4 * t4 * t6 + t1 * t2 * t4 * t5 * t6 +
                     t1 * t3 * t5 * t5 * t6 + t2 * t2 * t4 * t6 * t6 + t2 * t3 * t5 * t6 * t6 +
                     t3 * t3 * std::pow(t6, 3));
    }
    if (t < 0.5) {
        return c * (t0 * std::pow(t5, 4) + t1 * std::pow(t5, 3) * t6 + t2 * t5 * t5 * t6 * t6 +
                    t3 * t5 * std::pow(t6, 3) + t4 * std::pow(t6, 4));
    }
    if (t < 0.6) return -c * std::pow(t6, 5);
    return 0.0;
}

double closed_left(int i, double t) {
    switch (i) {
        case 0: return closed_0(t);
        case 1: return closed_1(t);
        case 2: return closed_2(t);
        case 3: return closed_3(t);
        case 4: return closed_4(t);
        default: return closed_5(t);
    }
}

}  // namespace

const KnotVector& make_knot_vector() {
    static const KnotVector knots = [] {
        KnotVector k{};
        for (int j = 0; j < kKnotCount; ++j) {
            const int interior = std::clamp(j - kDegree, 0, 10);
            k[j] = interior / 10.0;
        }
        return k;
    }();
    return knots;
}

double eval_basis_recursive(int i, double t) {
    check_index(i);
    check_parameter(t);
    return cox_de_boor(i, kDegree, t, make_knot_vector());
}

double eval_basis_closed_form(int i, double t) {
    check_index(i);
    check_parameter(t);
    if (i <= 5) return closed_left(i, t);
    if (i <= 9) return closed_5(t - 0.1 * (i - 5));
    return closed_left(kQuasiCount - 1 - i, 1.0 - t);
}

BasisSpan eval_quasi_span(double t) {
    check_parameter(t);
    const KnotVector& k = make_knot_vector();
    const int span = find_span(t, k);

    // Piegl & Tiller, The NURBS Book, algorithm A2.2.
    BasisSpan out;
    out.first = span - kDegree;
    auto& n = out.values;
    std::array<double, kOrder> left{};
    std::array<double, kOrder> right{};
    n[0] = 1.0;
    for (int j = 1; j <= kDegree; ++j) {
        left[j] = t - k[span + 1 - j];
        right[j] = k[span + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double temp = n[r] / (right[r + 1] + left[j - r]);
            n[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        n[j] = saved;
    }
    return out;
}

BasisVector15 eval_all_quasi(double t) {
    const BasisSpan span = eval_quasi_span(t);
    BasisVector15 out{};
    for (int j = 0; j < kOrder; ++j) out[span.first + j] = span.values[j];
    return out;
}

BasisSpan eval_piecewise_span(double t, double omega) {
    check_omega(omega);
    check_parameter(t);
    if (t < omega) return eval_quasi_span(std::min(t / omega, 1.0));
    BasisSpan span = eval_quasi_span(std::clamp((t - omega) / (1.0 - omega), 0.0, 1.0));
    span.first += kJunctionIndex;
    return span;
}

PiecewiseBasisVector29 eval_all_piecewise(double t, double omega) {
    const BasisSpan span = eval_piecewise_span(t, omega);
    PiecewiseBasisVector29 out{};
    for (int j = 0; j < kOrder; ++j) out[span.first + j] = span.values[j];
    return out;
}

}  // namespace quasifit
