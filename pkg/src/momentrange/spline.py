"""Extremal C^1 spline witnesses, the Hilbert-matrix interpolant and derivative ranges.

Every builder writes its spline as a linear combination of fixed basis
splines (one per free parameter), so the moment constraints become a small
exact linear system whose matrix entries are moments of the basis splines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .certificate import WrongDegree
from .exact import (
    LinearSystem,
    Polynomial,
    SingularMatrixError,
    hilbert_matrix,
    moment_integral,
    poly_gcd,
    solve_linear_exact,
)
from .moments import MomentVector, delta

X = Polynomial.x()
ONE = Polynomial.const(1)
HALF = Fraction(1, 2)

LEFT_QUADRATIC = "left_quadratic"
SYMMETRIC = "symmetric"
N3 = "n3"
FAMILIES = (LEFT_QUADRATIC, SYMMETRIC, N3)

ROOT_WIDTH = Fraction(1, 2**40)


class DegenerateParameter(ValueError):
    def __init__(self, t, reason: str = "singular moment system"):
        super().__init__(f"degenerate t={t}: {reason}")
        self.t = t


@dataclass(frozen=True)
class PiecewisePolynomial:
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Polynomial, ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        if len(self.pieces) != len(bps) - 1:
            raise ValueError("need exactly one piece per interval")
        if any(lo >= hi for lo, hi in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if bps[0] != 0 or bps[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @classmethod
    def single(cls, p: Polynomial) -> PiecewisePolynomial:
        return cls((Fraction(0), Fraction(1)), (p,))

    def intervals(self):
        return zip(self.breakpoints, self.breakpoints[1:], self.pieces)

    def piece_at(self, x) -> Polynomial:
        i = max(j for j, b in enumerate(self.breakpoints[:-1]) if b <= x)
        return self.pieces[i]

    def __call__(self, x) -> Fraction:
        return self.piece_at(x)(x)

    def deriv(self) -> PiecewisePolynomial:
        return PiecewisePolynomial(self.breakpoints, tuple(p.deriv() for p in self.pieces))

    def __add__(self, other: PiecewisePolynomial) -> PiecewisePolynomial:
        if self.breakpoints != other.breakpoints:
            raise ValueError("breakpoints differ")
        return PiecewisePolynomial(self.breakpoints, tuple(p + q for p, q in zip(self.pieces, other.pieces)))

    def scale(self, c) -> PiecewisePolynomial:
        return PiecewisePolynomial(self.breakpoints, tuple(p * c for p in self.pieces))


def spline_moment(s: PiecewisePolynomial, k: int) -> Fraction:
    return sum((moment_integral(p, k, lo, hi) for lo, hi, p in s.intervals()), Fraction(0))


def spline_moments(s: PiecewisePolynomial, n: int) -> MomentVector:
    return MomentVector(spline_moment(s, k) for k in range(n + 1))


def c1_check(s: PiecewisePolynomial) -> bool:
    for left, right, x in zip(s.pieces, s.pieces[1:], s.breakpoints[1:-1]):
        if left(x) != right(x) or left.deriv()(x) != right.deriv()(x):
            return False
    return True


def reflect_spline(s: PiecewisePolynomial) -> PiecewisePolynomial:
    """The spline ``x -> s(1 - x)``."""
    mirror = 1 - X
    return PiecewisePolynomial(
        tuple(1 - b for b in reversed(s.breakpoints)),
        tuple(p.compose(mirror) for p in reversed(s.pieces)),
    )


def derivative_range(s: PiecewisePolynomial) -> tuple[Fraction, Fraction]:
    """Exact min and max of s' on [0, 1] when every piece has degree <= 2.

    Higher-degree pieces fall back to the critical-point enclosure and the
    outer ends of the enclosures are returned.
    """
    lows, highs = [], []
    for lo, hi, p in s.intervals():
        dp = p.deriv()
        if dp.degree <= 1:
            ends = (dp(lo), dp(hi))
            lows.append(min(ends))
            highs.append(max(ends))
        else:
            enc = extremum_enclosure(dp, lo, hi)
            lows.append(enc.min_lo)
            highs.append(enc.max_hi)
    return min(lows), max(highs)


def sample(s: PiecewisePolynomial, count: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Rows ``(x, s(x), s'(x))`` at ``count`` equally spaced points including 0 and 1."""
    if count < 2:
        raise ValueError("need at least two sample points")
    ds = s.deriv()
    rows = []
    for i in range(count):
        x = Fraction(i, count - 1)
        rows.append((x, s(x), ds(x)))
    return rows


# --- builders ---------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    family: str
    t: Fraction
    spline: PiecewisePolynomial
    coeffs: dict[str, Fraction] = field(hash=False)

    @property
    def plateau_slope(self) -> Fraction:
        """Slope b + 2ct of the linear middle piece (left_quadratic, n3)."""
        return self.coeffs["b"] + 2 * self.coeffs["c"] * self.t


def _basis_system(basis: Sequence[PiecewisePolynomial], m: MomentVector) -> LinearSystem:
    matrix = [[spline_moment(b, k) for b in basis] for k in range(len(m))]
    return LinearSystem(matrix, m.alphas)


def _solve_family(
    family: str, names: str, basis: Sequence[PiecewisePolynomial], m: MomentVector, t: Fraction
) -> Witness:
    try:
        sol = solve_linear_exact(_basis_system(basis, m))
    except SingularMatrixError:
        raise DegenerateParameter(t) from None
    spline = basis[0].scale(sol[0])
    for b, v in zip(basis[1:], sol[1:]):
        spline = spline + b.scale(v)
    return Witness(family, t, spline, dict(zip(names, sol)))


def _check(m: MomentVector, n: int, family: str) -> None:
    if m.n != n:
        raise WrongDegree(f"{family} spline needs {n + 1} moments, got {len(m)}")


def left_quadratic_basis(t) -> list[PiecewisePolynomial]:
    """Basis for ``a + bx + cx^2`` on [0,t] continued C^1-linearly on [t,1]."""
    t = Fraction(t)
    bps = (Fraction(0), t, Fraction(1))
    return [
        PiecewisePolynomial(bps, (ONE, ONE)),
        PiecewisePolynomial(bps, (X, X)),
        PiecewisePolynomial(bps, (X * X, 2 * t * X - t * t)),
    ]


def build_left_quadratic(m: MomentVector, t) -> Witness:
    _check(m, 2, LEFT_QUADRATIC)
    t = Fraction(t)
    if not 0 < t < 1:
        raise DegenerateParameter(t, "t must lie in (0, 1)")
    # determinant is a positive multiple of t^3 (6t^2 - 15t + 10), nonzero on (0, 1)
    try:
        return _solve_family(LEFT_QUADRATIC, "abc", left_quadratic_basis(t), m, t)
    except DegenerateParameter:
        raise AssertionError(f"left-quadratic system singular at t={t}") from None


def closed_form_c_n2(m: MomentVector, t) -> Fraction:
    t = Fraction(t)
    return 30 * delta(m, 0) / (t**3 * (6 * t * t - 15 * t + 10))


def closed_form_peak_n2(m: MomentVector, t) -> Fraction:
    t = Fraction(t)
    a0, a1, a2 = m.alphas
    num = 6 * t * t * a1 - 3 * t * t * a0 - 20 * a1 + 30 * a2 + 5 * t * a0 - 15 * t * a2
    return 12 * num / (6 * t * t - 15 * t + 10)


def symmetric_basis(t) -> list[PiecewisePolynomial]:
    """Basis for the spline quadratic on [1/2-t, 1/2+t] and linear outside."""
    t = Fraction(t)
    q = Fraction(1, 4)
    bps = (Fraction(0), HALF - t, HALF + t, Fraction(1))
    return [
        PiecewisePolynomial(bps, (ONE, ONE, ONE)),
        PiecewisePolynomial(bps, (X, X, X)),
        PiecewisePolynomial(
            bps,
            ((1 - 2 * t) * X + (t - t * t - q), X * X, (1 + 2 * t) * X + (-t * t - t - q)),
        ),
    ]


def build_symmetric(m: MomentVector, t) -> Witness:
    _check(m, 2, SYMMETRIC)
    t = Fraction(t)
    if not 0 < t < HALF:
        raise DegenerateParameter(t, "t must lie in (0, 1/2)")
    try:
        return _solve_family(SYMMETRIC, "abc", symmetric_basis(t), m, t)
    except DegenerateParameter:
        raise AssertionError(f"symmetric system singular at t={t}") from None


def closed_form_c_symmetric(m: MomentVector, t) -> Fraction:
    """``120 Delta_0 / (t (15 - 40 t^2 + 48 t^4))``; the derivative range has width ``4ct``."""
    t = Fraction(t)
    return 120 * delta(m, 0) / (t * (15 - 40 * t**2 + 48 * t**4))


def n3_basis(t) -> list[PiecewisePolynomial]:
    """Basis for quadratic on [0,t], linear on [t,1-t], quadratic on [1-t,1]."""
    t = Fraction(t)
    bps = (Fraction(0), t, 1 - t, Fraction(1))
    tail = 2 * t * X - t * t
    return [
        PiecewisePolynomial(bps, (ONE, ONE, ONE)),
        PiecewisePolynomial(bps, (X, X, X)),
        PiecewisePolynomial(bps, (X * X, tail, tail)),
        PiecewisePolynomial(bps, (Polynomial(), Polynomial(), (X - (1 - t)) ** 2)),
    ]


def build_n3(m: MomentVector, t) -> Witness:
    _check(m, 3, N3)
    t = Fraction(t)
    if not 0 < t < HALF:
        raise DegenerateParameter(t, "t must lie in (0, 1/2)")
    return _solve_family(N3, "abcd", n3_basis(t), m, t)


def n3_limits(m: MomentVector) -> dict[str, Fraction]:
    """t -> 0 limits of the n3 witness: plateau slope, c t^3 and d t^3."""
    _check(m, 3, N3)
    a0, a1, a2, a3 = m.alphas
    d0, d1 = delta(m, 0), delta(m, 1)
    return {"peak": 60 * (3 * a2 - 2 * a3 - a1), "c_t3": 3 * (d0 - d1), "d_t3": 3 * d1}


BUILDERS = {LEFT_QUADRATIC: build_left_quadratic, SYMMETRIC: build_symmetric, N3: build_n3}


def build(family: str, m: MomentVector, t) -> Witness:
    try:
        builder = BUILDERS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}") from None
    return builder(m, t)


# --- convergence ------------------------------------------------------------


@dataclass(frozen=True)
class WitnessReport:
    t: Fraction
    coefficients: dict[str, Fraction]
    derivative_min: Fraction
    derivative_max: Fraction
    achieved: Fraction
    predicted_bound: Fraction
    error: Fraction

    def to_json(self) -> dict:
        return {
            "t": str(self.t),
            "coefficients": {k: str(v) for k, v in self.coefficients.items()},
            "derivative_min": str(self.derivative_min),
            "derivative_max": str(self.derivative_max),
            "achieved": str(self.achieved),
            "predicted_bound": str(self.predicted_bound),
            "error": str(self.error),
        }


@dataclass(frozen=True)
class ConvergenceStudy:
    family: str
    predicted_bound: Fraction
    reports: list[WitnessReport]
    skipped: list[Fraction]
    monotone: bool
    halved: bool

    @property
    def passed(self) -> bool:
        return bool(self.reports) and self.monotone and self.halved


def predicted_bound(family: str, m: MomentVector) -> Fraction:
    if family == LEFT_QUADRATIC:
        return 12 * (3 * m[2] - 2 * m[1])
    if family == SYMMETRIC:
        return 32 * abs(delta(m, 0))
    if family == N3:
        return n3_limits(m)["peak"]
    raise ValueError(f"unknown family {family!r}")


def witness_report(w: Witness, target: Fraction) -> WitnessReport:
    lo, hi = derivative_range(w.spline)
    achieved = hi - lo if w.family == SYMMETRIC else w.plateau_slope
    return WitnessReport(w.t, dict(w.coeffs), lo, hi, achieved, target, abs(achieved - target))


def convergence_study(m: MomentVector, family: str, ts: Iterable) -> ConvergenceStudy:
    """Build the family along a decreasing t-sequence and track the error to the limit.

    ``achieved`` is the plateau slope b + 2ct for left_quadratic and n3, and the
    derivative-range width for symmetric. The decay check requires non-increasing
    errors and, for six or more points, a final error at most half the first.
    """
    ts = [Fraction(t) for t in ts]
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t-sequence must be strictly decreasing")
    target = predicted_bound(family, m)
    reports, skipped = [], []
    for t in ts:
        try:
            reports.append(witness_report(build(family, m, t), target))
        except DegenerateParameter:
            skipped.append(t)
    errs = [r.error for r in reports]
    monotone = all(b <= a for a, b in zip(errs, errs[1:]))
    halved = len(errs) < 6 or errs[-1] <= errs[0] / 2
    return ConvergenceStudy(family, target, reports, skipped, monotone, halved)


def geometric_ts(start, count: int, ratio=HALF) -> list[Fraction]:
    start, ratio = Fraction(start), Fraction(ratio)
    return [start * ratio**j for j in range(count)]


# --- interpolant and enclosures ---------------------------------------------


def hilbert_interpolant(m: MomentVector) -> Polynomial:
    """The unique polynomial of degree <= n with moments m."""
    coeffs = solve_linear_exact(LinearSystem(hilbert_matrix(len(m)), m.alphas))
    p = Polynomial(coeffs)
    assert all(moment_integral(p, k) == a for k, a in enumerate(m)), "interpolant moments drifted"
    return p


@dataclass(frozen=True)
class RangeEnclosure:
    """The minimum lies in [min_lo, min_hi] and the maximum in [max_lo, max_hi]."""

    min_lo: Fraction
    min_hi: Fraction
    max_lo: Fraction
    max_hi: Fraction

    @property
    def width(self) -> Fraction:
        return max(self.min_hi - self.min_lo, self.max_hi - self.max_lo)

    @property
    def is_exact(self) -> bool:
        return self.width == 0

    def contains(self, v) -> bool:
        """True when v is certainly inside the range."""
        return self.min_hi <= v <= self.max_lo

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("min_lo", "min_hi", "max_lo", "max_hi")}


def _sturm_sequence(q: Polynomial) -> list[Polynomial]:
    seq = [q, q.deriv()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq: list[Polynomial], x: Fraction) -> int:
    signs = [v for v in (p(x) for p in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def real_roots(q: Polynomial, lo, hi, width=ROOT_WIDTH) -> tuple[list[Fraction], list[tuple[Fraction, Fraction]]]:
    """Distinct roots of q in the open interval (lo, hi).

    Returns exact rational roots met along the way plus isolating intervals of
    width <= ``width``, each holding one simple root of the square-free part.
    Isolation uses Sturm counts; refinement is sign-change bisection.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if q.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    q = q // poly_gcd(q, q.deriv()) if q.degree > 0 else q
    exact: list[Fraction] = []
    for end in (lo, hi):
        while q.degree > 0 and q(end) == 0:
            q = q // (X - end)
    while True:
        found = _isolate(q, lo, hi, width)
        if isinstance(found, Fraction):
            exact.append(found)
            q = q // (X - found)
            continue
        return sorted(exact), found


def _isolate(q: Polynomial, lo: Fraction, hi: Fraction, width: Fraction):
    """Isolating intervals, or a Fraction if a bisection point hit a root exactly."""
    if q.degree <= 0:
        return []
    seq = _sturm_sequence(q)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        count = _variations(seq, a) - _variations(seq, b)
        if count == 0:
            continue
        if count == 1:
            out.append(_bisect(q, a, b, width))
            continue
        mid = (a + b) / 2
        if q(mid) == 0:
            return mid
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


def _bisect(q: Polynomial, a: Fraction, b: Fraction, width: Fraction):
    fa = q(a)
    while b - a > width:
        mid = (a + b) / 2
        fm = q(mid)
        if fm == 0:
            return (mid, mid)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return (a, b)


def _abs_bound(p: Polynomial, lo: Fraction, hi: Fraction) -> Fraction:
    r = max(abs(lo), abs(hi), Fraction(1))
    return sum((abs(c) * r**i for i, c in enumerate(p.coeffs)), Fraction(0))


def extremum_enclosure(g: Polynomial, lo=0, hi=1, width=ROOT_WIDTH) -> RangeEnclosure:
    """Rational enclosures of min and max of g over [lo, hi].

    Candidates are the endpoints and the critical points of g; an isolated
    critical point's value is bounded using a Lipschitz constant of g.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    vals = [(g(lo), g(lo)), (g(hi), g(hi))]
    dg = g.deriv()
    if not dg.is_zero():
        exact, boxes = real_roots(dg, lo, hi, width)
        vals += [(g(r), g(r)) for r in exact]
        lip = _abs_bound(dg, lo, hi)
        for a, b in boxes:
            ga, gb = g(a), g(b)
            slack = lip * (b - a)
            vals.append((max(ga, gb) - slack, min(ga, gb) + slack))
    return RangeEnclosure(
        min(v[0] for v in vals),
        min(v[1] for v in vals),
        max(v[0] for v in vals),
        max(v[1] for v in vals),
    )


def interpolant_derivative_range(p: Polynomial, order: int = 1) -> RangeEnclosure:
    """Enclosure of the range of the ``order``-th derivative of p over [0, 1]."""
    g = p
    for _ in range(order):
        g = g.deriv()
    return extremum_enclosure(g, 0, 1)
