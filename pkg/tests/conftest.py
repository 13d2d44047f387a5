from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from momentrange.exact import Polynomial
from momentrange.moments import MomentVector

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


def moment_vectors(min_n=0, max_n=6):
    return st.lists(rationals, min_size=min_n + 1, max_size=max_n + 1).map(MomentVector)


def polynomials(max_degree=6):
    return st.lists(rationals, min_size=1, max_size=max_degree + 1).map(lambda cs: Polynomial(tuple(cs)))


def open_unit(lo=Fraction(0), hi=Fraction(1)):
    """Rationals strictly inside (lo, hi)."""
    return st.fractions(min_value=lo, max_value=hi, max_denominator=64).filter(lambda t: lo < t < hi)


# One PASS/FAIL line per acceptance criterion in the terminal summary; tests
# are named test_criterion_NN_<part>[param].
_acceptance: dict[int, list[tuple[str, str]]] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        number = int(name.split("_")[2])
        _acceptance.setdefault(number, []).append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        failed = [name for name, outcome in _acceptance[number] if outcome != "passed"]
        line = f"criterion {number}: {'FAIL' if failed else 'PASS'}"
        if failed:
            line += f"  (failing: {', '.join(failed)})"
        terminalreporter.write_line(line)


@pytest.fixture
def m123():
    return MomentVector([1, 2, 3])


@pytest.fixture
def m1234():
    return MomentVector([1, 2, 3, 4])
