"""Bernstein-weight derivative functionals D_{k,n} and their identities.

Each D_{k,n} is the weighted mean of f' against x^k (1-x)^{n+1-k}; after
integrating by parts it is a linear form in the moments with integer
coefficients, which is how it is evaluated here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exact import Polynomial, moment_integral
from .moments import MomentVector, delta


class DegreeTooSmall(ValueError):
    pass


def bernstein_poly(v: int, n: int) -> Polynomial:
    """``C(n, v) x^v (1 - x)^(n - v)`` expanded in monomials."""
    if not 0 <= v <= n:
        raise IndexError(f"Bernstein index {v} outside 0..{n}")
    return comb(n, v) * Polynomial.monomial(v) * (1 - Polynomial.x()) ** (n - v)


def weight(k: int, n: int) -> Polynomial:
    """The unnormalised weight ``x^k (1 - x)^(n + 1 - k)`` used for D_{k,n}."""
    return Polynomial.monomial(k) * (1 - Polynomial.x()) ** (n + 1 - k)


def beta_norm(k: int, n: int) -> Fraction:
    """Integral of ``x^k (1-x)^(n+1-k)`` over [0,1], i.e. ``1/((n+2) C(n+1,k))``."""
    if not 1 <= k <= n:
        raise IndexError(f"k={k} outside 1..{n}")
    return Fraction(1, (n + 2) * comb(n + 1, k))


@lru_cache(maxsize=None)
def d_coefficients(k: int, n: int) -> tuple[int, ...]:
    """Integer coefficients c with ``D_{k,n} = sum_j c[j] alpha_j``."""
    if not 1 <= k <= n:
        raise IndexError(f"k={k} outside 1..{n}")
    p = (n + 1) * (n + 2) * (bernstein_poly(k, n) - bernstein_poly(k - 1, n))
    cs = [p.coeff(j) for j in range(n + 1)]
    assert all(c.denominator == 1 for c in cs)
    return tuple(int(c) for c in cs)


def _dot(coeffs, m: MomentVector) -> Fraction:
    return sum((c * a for c, a in zip(coeffs, m)), Fraction(0))


def d_value(m: MomentVector, k: int) -> Fraction:
    return _dot(d_coefficients(k, m.n), m)


@dataclass(frozen=True)
class FunctionalTable:
    """D_{1,n}..D_{n,n}; ``values[k-1]`` holds D_{k,n}."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.n:
            raise ValueError(f"degree {self.n} table needs {self.n} values")

    def d(self, k: int) -> Fraction:
        if not 1 <= k <= self.n:
            raise IndexError(f"k={k} outside 1..{self.n}")
        return self.values[k - 1]

    def items(self):
        return [(k, v) for k, v in enumerate(self.values, start=1)]

    def to_json(self) -> dict:
        return {"n": self.n, "D": {str(k): str(v) for k, v in self.items()}}


def d_table(m: MomentVector) -> FunctionalTable:
    return FunctionalTable(m.n, tuple(d_value(m, k) for k in range(1, m.n + 1)))


def convexity_project(table: FunctionalTable) -> FunctionalTable:
    """Degree n+1 table to degree n via
    ``D_{k,n} = (n+2-k)/(n+3) D_{k,n+1} + (k+1)/(n+3) D_{k+1,n+1}``."""
    if table.n < 2:
        raise DegreeTooSmall("projection needs a table of degree >= 2")
    n = table.n - 1
    return FunctionalTable(
        n,
        tuple(
            Fraction(n + 2 - k, n + 3) * table.d(k) + Fraction(k + 1, n + 3) * table.d(k + 1)
            for k in range(1, n + 1)
        ),
    )


def d_diagonal(m: MomentVector, j: int) -> Fraction:
    """D_{j,j} of the truncation alpha_0..alpha_j."""
    return d_value(m.truncate(j), j)


def connection_check(m: MomentVector, k: int) -> tuple[Fraction, Fraction]:
    """``(Delta_k, (D_{k+2,k+2} - D_{k+1,k+1}) / (2(k+3)))``, computed independently."""
    lhs = delta(m, k)
    rhs = (d_diagonal(m, k + 2) - d_diagonal(m, k + 1)) / (2 * (k + 3))
    return lhs, rhs


def d_diag_via_deltas(m: MomentVector) -> Fraction:
    """D_{n,n} by the telescoped Delta sum ``6(2a1 - a0) + 2 sum (k+3) Delta_k``."""
    if m.n < 1:
        raise DegreeTooSmall("needs n >= 1")
    return 6 * (2 * m[1] - m[0]) + 2 * sum(
        ((k + 3) * delta(m, k) for k in range(m.n - 1)), Fraction(0)
    )


def monomial_identity_check(m: MomentVector, k: int) -> tuple[Fraction, Fraction]:
    """``(k a_{k-1}, (k+1) a_k - D_{k,k} / ((k+1)(k+2)))``."""
    if not 1 <= k <= m.n:
        raise IndexError(f"k={k} outside 1..{m.n}")
    return k * m[k - 1], (k + 1) * m[k] - d_diagonal(m, k) / ((k + 1) * (k + 2))


def d_value_by_integration(f: Polynomial, k: int, n: int) -> Fraction:
    """``-(n+2) * integral of f * d/dx b_{k,n+1}``, integrated directly (no moments)."""
    return -(n + 2) * moment_integral(f * bernstein_poly(k, n + 1).deriv(), 0)


@lru_cache(maxsize=None)
def second_derivative_coefficients(k: int, n: int) -> tuple[Fraction, ...]:
    """Coefficients of the f'' analogue of D_{k,n}, using weight x^k (1-x)^(n+2-k).

    The weight and its first derivative vanish at both ends when 2 <= k <= n,
    so integrating by parts twice leaves a linear form in alpha_0..alpha_n.
    """
    if not 2 <= k <= n:
        raise IndexError(f"k={k} outside 2..{n}")
    w = weight(k, n + 1)
    norm = moment_integral(w, 0)
    w2 = w.deriv().deriv()
    return tuple(w2.coeff(j) / norm for j in range(n + 1))


@dataclass(frozen=True)
class SecondDerivativeTable:
    """Values for k = 2..n; ``values[k-2]`` is the entry for k."""

    n: int
    values: tuple[Fraction, ...]

    def value(self, k: int) -> Fraction:
        return self.values[k - 2]

    def items(self):
        return [(k, v) for k, v in enumerate(self.values, start=2)]

    def to_json(self) -> dict:
        return {"n": self.n, "D2": {str(k): str(v) for k, v in self.items()}}


def second_derivative_values(m: MomentVector) -> SecondDerivativeTable:
    if m.n < 2:
        raise DegreeTooSmall("second-derivative values need n >= 2")
    return SecondDerivativeTable(
        m.n, tuple(_dot(second_derivative_coefficients(k, m.n), m) for k in range(2, m.n + 1))
    )
