"""Certified derivative-range intervals from finite Hausdorff moments, in exact arithmetic."""

from .bernstein import d_table, d_value, second_derivative_values
from .certificate import RangeCertificate, certificate, classify_n2, classify_n3
from .exact import Polynomial, determinant_exact, parse_rational, solve_linear_exact
from .extremal import maximize_spread
from .moments import MomentVector, delta, deltas, linear_consistency, negate, parse_moments, reflect
from .spline import (
    PiecewisePolynomial,
    build_left_quadratic,
    build_n3,
    build_symmetric,
    convergence_study,
    hilbert_interpolant,
)

__all__ = [
    "MomentVector",
    "PiecewisePolynomial",
    "Polynomial",
    "RangeCertificate",
    "build_left_quadratic",
    "build_n3",
    "build_symmetric",
    "certificate",
    "classify_n2",
    "classify_n3",
    "convergence_study",
    "d_table",
    "d_value",
    "delta",
    "deltas",
    "determinant_exact",
    "hilbert_interpolant",
    "linear_consistency",
    "maximize_spread",
    "negate",
    "parse_moments",
    "parse_rational",
    "reflect",
    "second_derivative_values",
    "solve_linear_exact",
]
