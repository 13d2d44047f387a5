"""Maximum certificate width B_n - A_n over moment vectors in the cube [-1, 1]^(n+1).

The width is max over ordered pairs (i, j) of the linear form D_i - D_j, and a
linear form is maximised over the cube at the sign vector of its coefficients,
so the answer is a maximum of absolute coefficient sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .bernstein import DegreeTooSmall, d_coefficients, d_table
from .moments import MomentVector


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    max_width: Fraction
    argmax: MomentVector
    achieving_pair: tuple[int, int]  # (k_max, k_min)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_width": str(self.max_width),
            "argmax": [str(a) for a in self.argmax],
            "pair": list(self.achieving_pair),
        }


def _vertex_key(v: tuple[int, ...]) -> tuple[int, ...]:
    # +1 sorts before -1 at the first differing position
    return tuple(-s for s in v)


def maximize_spread(n: int) -> ExtremalResult:
    """Exact maximum of B_n - A_n over [-1, 1]^(n+1).

    Ties: the vertex that is lexicographically first with +1 preferred wins,
    then the smallest (k_max, k_min) pair.
    """
    if n < 2:
        raise DegreeTooSmall(f"spread is identically zero for n={n}")
    rows = {k: d_coefficients(k, n) for k in range(1, n + 1)}
    best = None
    for i, j in itertools.permutations(range(1, n + 1), 2):
        diff = [a - b for a, b in zip(rows[i], rows[j])]
        value = sum(abs(c) for c in diff)
        vertex = tuple(1 if c >= 0 else -1 for c in diff)
        key = (-value, _vertex_key(vertex), (i, j))
        if best is None or key < best[0]:
            best = (key, value, vertex, (i, j))
    _, value, vertex, pair = best
    return ExtremalResult(n, Fraction(value), MomentVector(vertex), pair)


def spread(m: MomentVector) -> Fraction:
    vals = d_table(m).values
    return max(vals) - min(vals)


def brute_force_spread(n: int) -> tuple[Fraction, MomentVector]:
    """Enumerate all 2^(n+1) cube vertices; the oracle for maximize_spread."""
    rows = [d_coefficients(k, n) for k in range(1, n + 1)]
    best_value, best_vertex = None, None
    for vertex in itertools.product((1, -1), repeat=n + 1):
        vals = [sum(c * s for c, s in zip(row, vertex)) for row in rows]
        w = max(vals) - min(vals)
        if best_value is None or w > best_value:
            best_value, best_vertex = w, vertex
    return Fraction(best_value), MomentVector(best_vertex)


@dataclass(frozen=True)
class AlternatingCheck:
    n: int
    alternating_width: Fraction
    max_width: Fraction

    @property
    def attains(self) -> bool:
        return self.alternating_width == self.max_width


def alternating_vertex(n: int) -> MomentVector:
    return MomentVector((-1) ** k for k in range(n + 1))


def alternating_conjecture_check(n_max: int) -> list[AlternatingCheck]:
    """Compare the width at (1, -1, 1, ...) with the true maximum for n = 2..n_max."""
    if n_max < 2:
        raise DegreeTooSmall("n_max must be at least 2")
    return [
        AlternatingCheck(n, spread(alternating_vertex(n)), maximize_spread(n).max_width)
        for n in range(2, n_max + 1)
    ]
