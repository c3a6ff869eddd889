"""Piecewise quintic B-spline fitting of daily-count series."""

from ._core import (
    QuasifitError,
    __version__,
    analyze_csv,
    eval_all_piecewise,
    eval_all_quasi,
    eval_basis_closed_form,
    eval_basis_recursive,
    find_peaks,
    fit,
    fit_fixed_omega,
    knot_vector,
    moving_average_7,
    normalize_report_json,
    omega_grid,
    overlay_svg,
    panel_svg,
    presets,
    quasi_distribution,
)

__all__ = [
    "QuasifitError",
    "analyze_csv",
    "eval_all_piecewise",
    "eval_all_quasi",
    "eval_basis_closed_form",
    "eval_basis_recursive",
    "find_peaks",
    "fit",
    "fit_fixed_omega",
    "knot_vector",
    "moving_average_7",
    "normalize_report_json",
    "omega_grid",
    "overlay_svg",
    "panel_svg",
    "presets",
    "quasi_distribution",
]
