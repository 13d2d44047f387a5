import pytest
from hypothesis import given, strategies as st

from momentrange.bernstein import DegreeTooSmall
from momentrange.extremal import (
    alternating_conjecture_check,
    alternating_vertex,
    brute_force_spread,
    maximize_spread,
    spread,
)
from momentrange.moments import MomentVector, reflect

# computed once by this module and confirmed by vertex enumeration
KNOWN = {2: 156, 3: 760, 4: 3120, 5: 11760, 6: 46592, 7: 169344, 8: 584640, 9: 2133120, 10: 7349760}


def test_small_degrees():
    r = maximize_spread(2)
    assert (r.max_width, r.argmax) == (156, MomentVector([1, -1, 1]))
    r = maximize_spread(3)
    assert (r.max_width, r.argmax, r.achieving_pair) == (760, MomentVector([1, -1, 1, -1]), (2, 1))
    assert r.to_json() == {"n": 3, "max_width": "760", "argmax": ["1", "-1", "1", "-1"], "pair": [2, 1]}


@pytest.mark.parametrize("n", range(2, 11))
def test_matches_vertex_enumeration(n):
    r = maximize_spread(n)
    value, _ = brute_force_spread(n)
    assert r.max_width == value == KNOWN[n]
    assert spread(r.argmax) == r.max_width


@pytest.mark.parametrize("n", range(2, 11))
def test_reflected_argmax_attains(n):
    r = maximize_spread(n)
    assert spread(reflect(r.argmax)) == r.max_width


def test_monotone_in_degree():
    widths = [maximize_spread(n).max_width for n in range(2, 14)]
    assert all(b >= a for a, b in zip(widths, widths[1:]))


@given(st.integers(2, 7), st.data())
def test_no_vertex_beats_maximum(n, data):
    v = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=n + 1, max_size=n + 1))
    assert spread(MomentVector(v)) <= maximize_spread(n).max_width


def test_rejects_small_degree():
    with pytest.raises(DegreeTooSmall):
        maximize_spread(1)
    with pytest.raises(DegreeTooSmall):
        alternating_conjecture_check(1)


def test_alternating_check():
    rows = alternating_conjecture_check(10)
    assert [r.n for r in rows] == list(range(2, 11))
    assert all(r.attains for r in rows)
    assert rows[0].alternating_width == 156 and rows[1].alternating_width == 760
    assert alternating_vertex(3) == MomentVector([1, -1, 1, -1])
