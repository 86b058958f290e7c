"""Exact scalar, polynomial, rational-function and series arithmetic."""

from .poly import Polynomial, RationalFunction, as_fraction, common_denominator, format_coeff, format_poly, poly_gcd
from .series import (
    DEFAULT_ORDER,
    GaugeSeries,
    LogSeries,
    PowerSeries,
    gauge_series,
    laurent_expand,
    log_wronskian,
    rf_series,
    series_reversion,
    stirling,
    stirling1_table,
    stirling2_table,
)
from .linalg import nullspace, solve

__all__ = [
    "DEFAULT_ORDER", "GaugeSeries", "LogSeries", "Polynomial", "PowerSeries", "RationalFunction",
    "as_fraction", "common_denominator", "format_coeff", "format_poly", "gauge_series",
    "laurent_expand", "log_wronskian", "nullspace", "poly_gcd", "rf_series", "series_reversion",
    "solve", "stirling", "stirling1_table", "stirling2_table",
]
