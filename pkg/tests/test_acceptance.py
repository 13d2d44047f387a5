"""Acceptance criteria, one test group per criterion.

Test names carry the criterion number; the conftest summary folds them into a
single PASS/FAIL line per criterion.
"""

import random
import subprocess
import sys
from fractions import Fraction

import pytest

from momentrange.bernstein import (
    connection_check,
    convexity_project,
    d_diag_via_deltas,
    d_table,
    d_value,
    d_value_by_integration,
    monomial_identity_check,
    second_derivative_values,
)
from momentrange.certificate import DEGENERATE, INTERVAL, certificate
from momentrange.exact import Polynomial
from momentrange.extremal import brute_force_spread, maximize_spread
from momentrange.moments import MomentVector, delta, moments_of, negate, reflect
from momentrange.spline import (
    LEFT_QUADRATIC,
    N3,
    SYMMETRIC,
    build,
    c1_check,
    derivative_range,
    geometric_ts,
    hilbert_interpolant,
    interpolant_derivative_range,
    spline_moments,
)

X = Polynomial.x()
F = Fraction
TS = geometric_ts(F(1, 8), 8)  # 2^-3 .. 2^-10
M112 = MomentVector([1, 1, 2])
M0011 = MomentVector([0, 0, 1, 1])


def rand_rational(rng, bound=20, den=30):
    return F(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def within(value, target, rel=0.01):
    return abs(float(value) - target) <= rel * abs(target)


# 1 -------------------------------------------------------------------------


def test_criterion_01_known_values():
    c = certificate(MomentVector([1, 2, 3]))
    assert (c.status, c.A, c.B) == (INTERVAL, -24, 60)
    c = certificate(MomentVector([1, 1]))
    assert (c.status, c.A, c.B) == (DEGENERATE, 6, 6)


# 2 -------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 13))
def test_criterion_02_increasing_moments(n):
    m = MomentVector(k + 1 for k in range(n + 1))
    c = certificate(m)
    assert (c.A, c.B) == (-n * (n + 1) * (n + 2), (n + 1) * (n + 2) * (2 * n + 1))
    assert all(d_value(m, k) == 0 for k in range(1, n - 1))


# 3 -------------------------------------------------------------------------


@pytest.mark.parametrize("n, width, vertex", [(2, 156, (1, -1, 1)), (3, 760, (1, -1, 1, -1))])
def test_criterion_03_cube_maximum(n, width, vertex):
    r = maximize_spread(n)
    assert r.max_width == width and r.argmax == MomentVector(vertex)
    assert brute_force_spread(n)[0] == width


# 4 -------------------------------------------------------------------------


def _identity_failures(m):
    bad = []
    n = m.n
    for k in range(n - 1):
        lhs, rhs = connection_check(m, k)
        if lhs != rhs:
            bad.append(f"connection k={k}")
    if d_diag_via_deltas(m) != d_value(m, n):
        bad.append("connection2")
    for k in range(1, n + 1):
        lhs, rhs = monomial_identity_check(m, k)
        if lhs != rhs:
            bad.append(f"monomial k={k}")
    if convexity_project(d_table(m)) != d_table(m.truncate(n - 1)):
        bad.append("convexity recurrence")
    for j in range(1, n):
        inner, outer = certificate(m.truncate(j)), certificate(m.truncate(j + 1))
        if not (outer.A <= inner.A and inner.B <= outer.B):
            bad.append(f"nesting {j}")
    c = certificate(m)
    vals = d_table(m).values
    if d_table(reflect(m)).values != tuple(-v for v in reversed(vals)):
        bad.append("reflection duality")
    if d_table(negate(m)).values != tuple(-v for v in vals):
        bad.append("negation duality")
    for other in (reflect(m), negate(m)):
        d = certificate(other)
        if (d.A, d.B) != (-c.B, -c.A):
            bad.append("dual certificate")
    if n >= 3:
        m3 = m.truncate(3)
        E, D, C = d_table(m3).values
        A, B = d_table(m3.truncate(2)).values
        if A != F(2, 5) * D + F(3, 5) * E or B != F(3, 5) * C + F(2, 5) * D:
            bad.append("n=3 convex combinations")
    return bad


def test_criterion_04_identity_suite():
    rng = random.Random(20261018)
    failures = []
    for _ in range(200):
        n = rng.randint(2, 10)
        m = MomentVector(rand_rational(rng) for _ in range(n + 1))
        failures += [(m, f) for f in _identity_failures(m)]
    assert failures == []


# 5 -------------------------------------------------------------------------


def test_criterion_05_integration_oracle():
    rng = random.Random(5)
    for _ in range(100):
        f = Polynomial(tuple(rand_rational(rng) for _ in range(rng.randint(1, 7))))
        n = rng.randint(1, 7)
        m = moments_of(f, n)
        for k in range(1, n + 1):
            assert d_value(m, k) == d_value_by_integration(f, k, n)


def test_criterion_05_linear_slope():
    rng = random.Random(55)
    for _ in range(100):
        u, v = rand_rational(rng), rand_rational(rng)
        n = rng.randint(1, 10)
        assert set(d_table(moments_of(u + v * X, n)).values) == {v}


# 6 -------------------------------------------------------------------------


@pytest.mark.parametrize("family, n, t_max", [(LEFT_QUADRATIC, 2, F(1)), (SYMMETRIC, 2, F(1, 2)), (N3, 3, F(1, 2))])
def test_criterion_06_witness_exactness(family, n, t_max):
    rng = random.Random(family)
    for _ in range(20):
        m = MomentVector(rand_rational(rng) for _ in range(n + 1))
        t = t_max * F(rng.randint(1, 63), 64)
        s = build(family, m, t).spline
        assert spline_moments(s, n) == m
        assert c1_check(s)
        cert = certificate(m)
        lo, hi = derivative_range(s)
        assert lo <= cert.A and cert.B <= hi


# 7 -------------------------------------------------------------------------


def test_criterion_07_left_quadratic_peaks():
    peaks = [build(LEFT_QUADRATIC, M112, t).plateau_slope for t in TS]
    assert all(b < a for a, b in zip(peaks, peaks[1:]))
    assert within(peaks[-1], 48)


def test_criterion_07_symmetric_widths():
    lo, hi = derivative_range(build(SYMMETRIC, M112, TS[-1]).spline)
    assert 32 * abs(delta(M112, 0)) == 224
    assert within(hi - lo, 224)


def test_criterion_07_n3_peak():
    assert within(build(N3, M0011, TS[-1]).plateau_slope, 60)


def test_criterion_07_n3_c_scaling():
    t = TS[-1]
    assert within(build(N3, M0011, t).coeffs["c"] * t**3, 8)


def test_criterion_07_n3_d_scaling():
    t = TS[-1]
    assert within(build(N3, M0011, t).coeffs["d"] * t**3, -6)


# 8 -------------------------------------------------------------------------


def test_criterion_08_quadratic_interpolant():
    m = MomentVector([1, 2, 3])
    p = hilbert_interpolant(m)
    assert p == 27 - 192 * X + 210 * X**2
    assert p.deriv().deriv() == Polynomial.const(420) == Polynomial.const(60 * delta(m, 0))
    enc = interpolant_derivative_range(p)
    assert (enc.min_lo, enc.max_hi) == (-192, 228)
    assert enc.contains(-24) and enc.contains(60)


def test_criterion_08_cubic_second_derivative():
    rng = random.Random(8)
    for _ in range(50):
        m = MomentVector(rand_rational(rng) for _ in range(4))
        enc = interpolant_derivative_range(hilbert_interpolant(m), order=2)
        assert enc.width <= F(1, 10**9)
        V, U = second_derivative_values(m).values
        assert enc.contains(U) and enc.contains(V)


# 9 -------------------------------------------------------------------------

COMMANDS = [
    ["analyze", "-m", "1,2,3"],
    ["analyze", "-m", "0,0,1,1", "--format", "text"],
    ["witness", "-m", "1,1,2", "--family", "left-quad", "--t", "1/10", "--samples", "101", "--format", "csv"],
    ["witness", "-m", "1,1,2", "--family", "symmetric", "--t", "1/4"],
    ["witness", "-m", "0,0,1,1", "--family", "n3", "--t", "1/16", "--format", "text"],
    ["converge", "-m", "1,1,2", "--family", "left-quad", "--t", "geom:1/8:8"],
    ["converge", "-m", "0,0,1,1", "--family", "n3", "--format", "json"],
    ["maximize", "-n", "3", "--alternating"],
    ["verify", "-m", "1,2,3,4"],
    ["corollary-table", "--n-max", "12"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_criterion_09_determinism(argv):
    runs = [subprocess.run([sys.executable, "-m", "momentrange", *argv], capture_output=True) for _ in range(2)]
    assert runs[0].returncode == runs[1].returncode == 0
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout
