"""Exact rational scalars, dense polynomials and small exact linear solves.

Scalars are :class:`fractions.Fraction`; everything in the package computes
through this module so no floating point enters a certified value.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction

MAX_BITS_ENV = "MOMENT_RANGE_MAX_BITS"

_LITERAL = re.compile(r"[+-]?(\d+(/\d+)?|\d+\.\d*|\.\d+)")


class ParseError(ValueError):
    """Malformed rational literal; ``position`` is the character offset."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SingularMatrixError(ArithmeticError):
    pass


class BitSizeExceeded(ArithmeticError):
    pass


def max_bits() -> int | None:
    raw = os.environ.get(MAX_BITS_ENV, "").strip()
    if not raw:
        return None
    return int(raw)


def check_bits(values: Iterable[Fraction]) -> None:
    """Raise BitSizeExceeded if any value is larger than the env-configured cap."""
    cap = max_bits()
    if cap is None:
        return
    for v in values:
        bits = max(abs(v.numerator).bit_length(), v.denominator.bit_length())
        if bits > cap:
            raise BitSizeExceeded(f"rational {v} needs {bits} bits, cap is {cap}")


def parse_rational(text: str, position: int = 0) -> Fraction:
    """Parse an integer, ``p/q`` or finite decimal literal exactly.

    >>> parse_rational("0.1")
    Fraction(1, 10)
    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    s = text.strip()
    offset = position + (len(text) - len(text.lstrip()))
    if not _LITERAL.fullmatch(s):
        raise ParseError(f"not a rational literal: {text!r}", offset)
    try:
        value = Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", offset) from None
    check_bits([value])
    return value


def format_rational(x: Fraction) -> str:
    return str(x)


def as_rational(x) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; ``coeffs[i]`` multiplies ``x**i``. Trailing zeros are stripped."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c) -> Polynomial:
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls((Fraction(0),) * k + (Fraction(c),))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other) -> Polynomial:
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> Polynomial:
        return self + (-_lift(other))

    def __rsub__(self, other) -> Polynomial:
        return _lift(other) - self

    def __mul__(self, other) -> Polynomial:
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - dq - 1, -1, -1):
            q = rem[i + dq] / lead
            quot[i] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[i + j] -= q * c
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dq]))

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def deriv(self) -> Polynomial:
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def antideriv(self) -> Polynomial:
        """Antiderivative vanishing at 0."""
        return Polynomial((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> Polynomial:
        return self * (1 / self.coeffs[-1]) if self.coeffs else self

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _lift(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial.const(p)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def moment_integral(p: Polynomial, k: int, lo=0, hi=1) -> Fraction:
    """Exact value of the integral of ``x**k * p(x)`` over ``[lo, hi]``."""
    F = (Polynomial.monomial(k) * p).antideriv()
    return F(Fraction(hi)) - F(Fraction(lo))


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        m = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        r = tuple(Fraction(v) for v in self.rhs)
        if any(len(row) != len(m) for row in m):
            raise ValueError("matrix must be square")
        if len(r) != len(m):
            raise ValueError("rhs length does not match matrix dimension")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rhs", r)

    @property
    def dim(self) -> int:
        return len(self.rhs)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns the rows and the product of the scales."""
    out = []
    scale = Fraction(1)
    for row in rows:
        m = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * m) for v in row])
        scale *= m
    return out, scale


def _bareiss(a: list[list[int]], ncols_pivot: int) -> tuple[list[list[int]], int, list[int]]:
    """Fraction-free elimination in place on an integer matrix.

    Pivots on the first nonzero entry of each of the first ``ncols_pivot``
    columns. Returns the reduced rows, the row-swap sign and pivot columns.
    """
    nrows = len(a)
    sign = 1
    prev = 1
    r = 0
    pivots = []
    for col in range(ncols_pivot):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][col]
        for i in range(r + 1, nrows):
            for j in range(col + 1, len(a[i])):
                a[i][j] = (a[i][j] * piv - a[i][col] * a[r][j]) // prev
            a[i][col] = 0
        prev = piv
        pivots.append(col)
        r += 1
    return a, sign, pivots


def determinant_exact(matrix: Sequence[Sequence]) -> Fraction:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fraction(1)
    rows, scale = _integer_rows(matrix)
    a, sign, pivots = _bareiss(rows, n)
    if len(pivots) < n:
        return Fraction(0)
    return Fraction(sign * a[n - 1][n - 1]) / scale


def rank_exact(matrix: Sequence[Sequence]) -> int:
    if not matrix:
        return 0
    rows, _ = _integer_rows(matrix)
    _, _, pivots = _bareiss(rows, len(rows[0]))
    return len(pivots)


def solve_linear_exact(system: LinearSystem) -> tuple[Fraction, ...]:
    """Solve ``matrix @ x == rhs`` exactly by Bareiss elimination.

    Raises SingularMatrixError when the determinant is zero. The solution
    is checked by substituting back before it is returned.
    """
    n = system.dim
    aug = [list(row) + [b] for row, b in zip(system.matrix, system.rhs)]
    rows, _ = _integer_rows(aug)
    a, _, pivots = _bareiss(rows, n)
    if len(pivots) < n:
        raise SingularMatrixError(f"singular {n}x{n} system")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n]) - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / a[i][i]
    for row, b in zip(system.matrix, system.rhs):
        if sum(c * v for c, v in zip(row, x)) != b:
            raise RuntimeError("exact back-substitution check failed")
    check_bits(x)
    return tuple(x)


def hilbert_matrix(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """The n x n Hilbert matrix, entries ``1/(i+j+1)`` with zero-based indices."""
    return tuple(tuple(Fraction(1, i + j + 1) for j in range(n)) for i in range(n))
