import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import moment_vectors, polynomials, rationals
from momentrange.exact import ParseError, Polynomial
from momentrange.moments import (
    MomentVector,
    delta,
    deltas,
    linear_consistency,
    linear_moments,
    moments_of,
    negate,
    parse_moments,
    reflect,
    serialize_moments,
)

X = Polynomial.x()


@pytest.mark.parametrize(
    "alphas, k, expected",
    [([1, 2, 3], 0, 7), ([1, 2, 3, 4], 1, 10), ([1, -1, 1], 0, 13)],
)
def test_delta(alphas, k, expected):
    assert delta(MomentVector(alphas), k) == expected


def test_delta_small_cases_match_explicit_forms():
    m = MomentVector([Fraction(3, 7), -2, Fraction(5, 3), 4])
    a0, a1, a2, a3 = m.alphas
    assert delta(m, 0) == 6 * a2 - 6 * a1 + a0
    assert delta(m, 1) == 10 * a3 - 12 * a2 + 3 * a1


def test_delta_out_of_range():
    with pytest.raises(IndexError):
        delta(MomentVector([1, 2]), 0)
    assert deltas(MomentVector([1, 2])) == ()


def test_reflect_examples():
    assert reflect(MomentVector([1, 2, 3])) == MomentVector([1, -1, 0])
    x_moments = MomentVector([Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)])
    assert reflect(x_moments) == MomentVector([Fraction(1, 2), Fraction(1, 6), Fraction(1, 12)])


@given(polynomials(5), st.integers(0, 6))
def test_reflect_matches_direct_integration(p, n):
    assert reflect(moments_of(p, n)) == moments_of(p.compose(1 - X), n)


@given(moment_vectors())
def test_reflect_involution(m):
    assert reflect(reflect(m)) == m


@given(moment_vectors())
def test_negate(m):
    assert negate(negate(m)) == m
    assert negate(m) == MomentVector(-a for a in m)


def test_negate_zero_fixed():
    z = MomentVector([0, 0, 0])
    assert negate(z) == z


@given(moment_vectors(min_n=2))
def test_delta0_reflection_invariant(m):
    assert delta(reflect(m), 0) == delta(m, 0)


@given(moment_vectors(min_n=3, max_n=3))
def test_delta1_sign_under_reflection(m):
    g = reflect(m)
    assert (delta(m, 1) <= 0) == (delta(g, 0) <= delta(g, 1))


@given(moment_vectors(min_n=2))
def test_delta_negation(m):
    assert deltas(negate(m)) == tuple(-d for d in deltas(m))


@given(rationals, rationals, st.integers(1, 8))
def test_linear_moments_recovered(u, v, n):
    m = linear_moments(u, v, n)
    assert moments_of(u + v * X, n) == m
    assert all(d == 0 for d in deltas(m))
    assert linear_consistency(m).coeffs == (u, v)


def test_linear_consistency_examples():
    fit = linear_consistency(MomentVector([2, Fraction(7, 6), Fraction(5, 6)]))
    assert fit.is_linear and fit.coeffs == (1, 2)
    assert not linear_consistency(MomentVector([1, 2, 3])).is_linear


@given(rationals, rationals)
def test_linear_consistency_two_moments(a0, a1):
    fit = linear_consistency(MomentVector([a0, a1]))
    assert fit.is_linear
    assert fit.coeffs == (2 * (2 * a0 - 3 * a1), 6 * (2 * a1 - a0))


@given(moment_vectors(min_n=2))
def test_linear_iff_deltas_vanish(m):
    # both tests run inside; this only fails through the internal cross-check
    fit = linear_consistency(m)
    assert fit.is_linear == all(d == 0 for d in deltas(m))


@pytest.mark.parametrize(
    "text, alphas",
    [("1,2,3", [1, 2, 3]), ("1/2,1/3,1/4", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]), ("0.1,1", [Fraction(1, 10), 1])],
)
def test_parse_moments(text, alphas):
    assert parse_moments(text) == MomentVector(alphas)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_moments("1,2,oops")
    assert info.value.position == 4
    with pytest.raises(ParseError):
        parse_moments("1,,2")
    with pytest.raises(ParseError):
        parse_moments("")


@given(moment_vectors())
def test_serialize_roundtrip(m):
    assert parse_moments(serialize_moments(m)) == m
    assert MomentVector.from_json(json.dumps(m.to_json())) == m


def test_json_shape():
    assert MomentVector([1, 2, 3]).to_json() == {"alphas": ["1", "2", "3"]}


def test_empty_vector_rejected():
    with pytest.raises(ValueError):
        MomentVector([])
