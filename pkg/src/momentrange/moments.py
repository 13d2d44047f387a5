"""Moment vectors, their Delta sequence and the reflection/negation transforms."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .exact import ParseError, as_rational, moment_integral, parse_rational, rank_exact


@dataclass(frozen=True)
class MomentVector:
    """Hausdorff moments ``alphas[k]`` = integral of ``x**k f(x)`` over [0, 1]."""

    alphas: tuple[Fraction, ...]

    def __init__(self, alphas: Iterable):
        vals = tuple(as_rational(a) for a in alphas)
        if not vals:
            raise ValueError("a moment vector needs at least one entry")
        object.__setattr__(self, "alphas", vals)

    @property
    def n(self) -> int:
        """Highest moment index (the vector has n+1 entries)."""
        return len(self.alphas) - 1

    def __len__(self) -> int:
        return len(self.alphas)

    def __getitem__(self, k: int) -> Fraction:
        return self.alphas[k]

    def __iter__(self):
        return iter(self.alphas)

    def truncate(self, n: int) -> MomentVector:
        """Keep alpha_0..alpha_n."""
        if not 0 <= n <= self.n:
            raise IndexError(f"cannot truncate degree {self.n} vector to {n}")
        return MomentVector(self.alphas[: n + 1])

    def to_json(self) -> dict:
        return {"alphas": [str(a) for a in self.alphas]}

    @classmethod
    def from_json(cls, obj: dict | str) -> MomentVector:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(parse_rational(str(a)) for a in obj["alphas"])

    def __str__(self) -> str:
        return serialize_moments(self)


def moments_of(p, n: int) -> MomentVector:
    """Exact moments alpha_0..alpha_n of a polynomial."""
    return MomentVector(moment_integral(p, k) for k in range(n + 1))


def linear_moments(u, v, n: int) -> MomentVector:
    """Moments of ``u + v x``: ``u/(k+1) + v/(k+2)``."""
    u, v = Fraction(u), Fraction(v)
    return MomentVector(u / (k + 1) + v / (k + 2) for k in range(n + 1))


def delta(m: MomentVector, k: int) -> Fraction:
    """Three-term form measuring how far alpha_k..alpha_{k+2} are from linear-function moments."""
    if k < 0 or k + 2 > m.n:
        raise IndexError(f"Delta_{k} needs alpha_{k + 2}; vector has degree {m.n}")
    return (
        Fraction((k + 3) * (k + 4), 2) * m[k + 2]
        - (k + 2) * (k + 3) * m[k + 1]
        + Fraction((k + 1) * (k + 2), 2) * m[k]
    )


def deltas(m: MomentVector) -> tuple[Fraction, ...]:
    return tuple(delta(m, k) for k in range(max(m.n - 1, 0)))


def reflect(m: MomentVector) -> MomentVector:
    """Moments of ``x -> f(1 - x)``, by binomial expansion of ``(1 - u)**k``."""
    return MomentVector(
        sum((comb(k, j) * (-1) ** j * m[j] for j in range(k + 1)), Fraction(0))
        for k in range(len(m))
    )


def negate(m: MomentVector) -> MomentVector:
    return MomentVector(-a for a in m)


@dataclass(frozen=True)
class LinearFit:
    is_linear: bool
    coeffs: tuple[Fraction, Fraction] | None = None


def linear_consistency(m: MomentVector) -> LinearFit:
    """Decide whether some ``u + v x`` has exactly these moments.

    Runs the rank test on the augmented system and, for n >= 2, the
    vanishing-Delta test; the two must agree.
    """
    if m.n < 1:
        raise ValueError("linear consistency needs at least two moments")
    aug = [[Fraction(1, k + 1), Fraction(1, k + 2), m[k]] for k in range(len(m))]
    by_rank = rank_exact(aug) == 2
    if m.n >= 2:
        by_delta = all(d == 0 for d in deltas(m))
        if by_rank != by_delta:
            raise AssertionError(f"rank test ({by_rank}) and Delta test ({by_delta}) disagree for {m}")
    if not by_rank:
        return LinearFit(False)
    a0, a1 = m[0], m[1]
    return LinearFit(True, (2 * (2 * a0 - 3 * a1), 6 * (2 * a1 - a0)))


def parse_moments(text: str) -> MomentVector:
    """Parse comma-separated rational literals, e.g. ``"1/2,1/3,0.25"``."""
    if not text.strip():
        raise ParseError("empty moment list", 0)
    vals = []
    pos = 0
    for part in text.split(","):
        if not part.strip():
            raise ParseError("empty entry in moment list", pos)
        vals.append(parse_rational(part, pos))
        pos += len(part) + 1
    return MomentVector(vals)


def serialize_moments(m: MomentVector) -> str:
    return ",".join(str(a) for a in m)
