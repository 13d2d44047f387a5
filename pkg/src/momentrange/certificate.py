"""Certified sub-intervals of the derivative's range and the small-n case tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bernstein import d_table, d_value
from .moments import MomentVector, delta

NO_CERTIFICATE = "NoCertificate"
DEGENERATE = "Degenerate"
INTERVAL = "Interval"

PROVEN = "proven_sharp"
CONJECTURED = "conjectured"

STRICTNESS_NOTE = (
    "every C^1 function with these moments has a derivative range strictly "
    "longer than B - A; B - A is only a lower bound for the guaranteed length"
)


class WrongDegree(ValueError):
    pass


@dataclass(frozen=True)
class RangeCertificate:
    n: int
    status: str
    A: Fraction | None = None
    B: Fraction | None = None
    argmin_k: int | None = None
    argmax_k: int | None = None

    def contains(self, other: RangeCertificate) -> bool:
        return self.A <= other.A and other.B <= self.B

    def to_json(self) -> dict:
        out = {"n": self.n, "status": self.status}
        if self.status != NO_CERTIFICATE:
            out.update(A=str(self.A), B=str(self.B), argmin_k=self.argmin_k, argmax_k=self.argmax_k)
        return out


def certificate(m: MomentVector) -> RangeCertificate:
    """Convex hull of D_{1,n}..D_{n,n}; ties in argmin/argmax go to the smallest k."""
    if m.n == 0:
        return RangeCertificate(0, NO_CERTIFICATE)
    if m.n == 1:
        value = 12 * m[1] - 6 * m[0]
        assert value == d_value(m, 1)
        return RangeCertificate(1, DEGENERATE, value, value, 1, 1)
    items = d_table(m).items()
    kmin, lo = min(items, key=lambda kv: (kv[1], kv[0]))
    kmax, hi = max(items, key=lambda kv: (kv[1], -kv[0]))
    return RangeCertificate(m.n, DEGENERATE if lo == hi else INTERVAL, lo, hi, kmin, kmax)


@dataclass(frozen=True)
class CaseClassification:
    case_id: str
    A: Fraction
    B: Fraction
    A_status: str
    B_status: str
    matching_cases: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "case": self.case_id,
            "matching_cases": list(self.matching_cases),
            "A": str(self.A),
            "B": str(self.B),
            "A_status": self.A_status,
            "B_status": self.B_status,
        }


def classify_n2(m: MomentVector) -> CaseClassification:
    if m.n != 2:
        raise WrongDegree(f"three moments required, got {len(m)}")
    lower = 12 * (4 * m[1] - m[0] - 3 * m[2])
    upper = 12 * (3 * m[2] - 2 * m[1])
    d0 = delta(m, 0)
    if d0 > 0:
        case, A, B = "delta0>0", lower, upper
    elif d0 < 0:
        case, A, B = "delta0<0", upper, lower
    else:
        case, A, B = "delta0=0", upper, upper
    return CaseClassification(case, A, B, PROVEN, PROVEN, (case,))


# Row label, predicate on (Delta_0, Delta_1), lower-bound name, upper-bound name.
# C = D_{3,3}, D = D_{2,3}, E = D_{1,3}.
N3_TABLE = (
    ("(i)", lambda d0, d1: d0 >= 0 and d1 <= 0, "E", "D"),
    ("(ii)", lambda d0, d1: 0 <= d0 <= d1, "D", "C"),
    ("(iii)", lambda d0, d1: 0 <= d1 <= d0, "E", "C"),
    ("(iv)", lambda d0, d1: d0 <= 0 and d1 >= 0, "D", "E"),
    ("(v)", lambda d0, d1: d1 <= d0 <= 0, "C", "D"),
    ("(vi)", lambda d0, d1: d0 <= d1 <= 0, "C", "E"),
)

# (row, side) pairs with a sharpness proof; (iv) and (v) follow from (i) and (ii) under f -> -f.
N3_PROVEN = {("(i)", "B"), ("(ii)", "A"), ("(iv)", "A"), ("(v)", "B")}


def cde_values(m: MomentVector) -> dict[str, Fraction]:
    a0, a1, a2, a3 = m.alphas
    return {
        "C": 20 * (4 * a3 - 3 * a2),
        "D": 60 * (3 * a2 - 2 * a3 - a1),
        "E": 20 * (4 * a3 - 9 * a2 + 6 * a1 - a0),
    }


def classify_n3(m: MomentVector) -> CaseClassification:
    """Pick the table row for (Delta_0, Delta_1); overlaps on boundaries go to the lowest row."""
    if m.n != 3:
        raise WrongDegree(f"four moments required, got {len(m)}")
    d0, d1 = delta(m, 0), delta(m, 1)
    vals = cde_values(m)
    matching = tuple(row for row, pred, _, _ in N3_TABLE if pred(d0, d1))
    row, _, lo_name, hi_name = next(r for r in N3_TABLE if r[0] == matching[0])
    if d0 == 0 and d1 == 0:
        return CaseClassification(row, vals["C"], vals["C"], PROVEN, PROVEN, matching)
    return CaseClassification(
        row,
        vals[lo_name],
        vals[hi_name],
        PROVEN if (row, "A") in N3_PROVEN else CONJECTURED,
        PROVEN if (row, "B") in N3_PROVEN else CONJECTURED,
        matching,
    )


def classify(m: MomentVector) -> CaseClassification | None:
    if m.n == 2:
        return classify_n2(m)
    if m.n == 3:
        return classify_n3(m)
    return None


def problem2_bounds_n2(m: MomentVector) -> tuple[Fraction, Fraction]:
    """Bounds ``12|Delta_0| <= L <= 32|Delta_0|`` on the guaranteed interval length."""
    if m.n != 2:
        raise WrongDegree(f"three moments required, got {len(m)}")
    d0 = abs(delta(m, 0))
    return 12 * d0, 32 * d0


def nesting_check(m: MomentVector) -> bool:
    if m.n < 3:
        raise WrongDegree("nesting needs n >= 3")
    inner = certificate(m.truncate(m.n - 1))
    outer = certificate(m)
    ok = outer.contains(inner)
    assert ok, f"nesting violated for {m}: {inner} not inside {outer}"
    return ok


def strictness_annotation(cert: RangeCertificate) -> str | None:
    if cert.status == INTERVAL and cert.A < cert.B:
        return STRICTNESS_NOTE
    return None
