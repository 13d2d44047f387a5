"""Exact identity checks relating moments, Delta values and the D functionals.

All of these are linear identities in the moments, so any failure points at
an implementation bug rather than at the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bernstein import (
    beta_norm,
    connection_check,
    convexity_project,
    d_diag_via_deltas,
    d_table,
    d_value,
    monomial_identity_check,
    second_derivative_values,
    weight,
)
from .certificate import DEGENERATE, certificate, classify
from .exact import moment_integral
from .moments import MomentVector, delta, linear_consistency, negate, reflect
from .spline import hilbert_interpolant


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""


def _eq(name: str, lhs, rhs) -> IdentityCheck:
    return IdentityCheck(name, lhs == rhs, f"{lhs} vs {rhs}")


def verify_identities(m: MomentVector) -> list[IdentityCheck]:
    if m.n < 2:
        raise ValueError("identity suite needs n >= 2")
    n = m.n
    table = d_table(m)
    cert = certificate(m)
    out: list[IdentityCheck] = []

    for k in range(n - 1):
        out.append(_eq(f"connection k={k}", *connection_check(m, k)))
    out.append(_eq("connection2 (D_nn via Deltas)", d_diag_via_deltas(m), d_value(m, n)))
    for k in range(1, n + 1):
        out.append(_eq(f"monomial identity k={k}", *monomial_identity_check(m, k)))
    out.append(_eq("convexity recurrence", convexity_project(table), d_table(m.truncate(n - 1))))
    for j in range(3, n + 1):
        ok = certificate(m.truncate(j)).contains(certificate(m.truncate(j - 1)))
        out.append(IdentityCheck(f"nesting degree {j - 1} in {j}", ok))
    for k in range(1, n + 1):
        out.append(_eq(f"beta norm k={k}", beta_norm(k, n), moment_integral(weight(k, n), 0)))

    out.append(IdentityCheck("certificate brackets every D", all(cert.A <= v <= cert.B for v in table.values)))

    g = reflect(m)
    tg = d_table(g)
    out.append(_eq("reflect involution", reflect(g), m))
    out.append(_eq("reflection duality D_k(g) = -D_{n+1-k}(f)", tg.values, tuple(-v for v in reversed(table.values))))
    cg = certificate(g)
    out.append(_eq("reflected certificate (-B, -A)", (cg.A, cg.B), (-cert.B, -cert.A)))
    out.append(_eq("Delta_0 reflection invariance", delta(g, 0), delta(m, 0)))
    neg = negate(m)
    cn = certificate(neg)
    out.append(_eq("negation duality", d_table(neg).values, tuple(-v for v in table.values)))
    out.append(_eq("negated certificate (-B, -A)", (cn.A, cn.B), (-cert.B, -cert.A)))

    fit = linear_consistency(m)
    out.append(_eq("degenerate iff linear", cert.status == DEGENERATE, fit.is_linear))

    cls = classify(m)
    if cls is not None:
        out.append(_eq("classification equals certificate", (cls.A, cls.B), (cert.A, cert.B)))

    m2 = m.truncate(2)
    A2 = 12 * (4 * m[1] - m[0] - 3 * m[2])
    B2 = 12 * (3 * m[2] - 2 * m[1])
    out.append(_eq("n=2 lower functional is D_{1,2}", A2, d_value(m2, 1)))
    out.append(_eq("n=2 upper functional is D_{2,2}", B2, d_value(m2, 2)))
    sd2 = second_derivative_values(m2).value(2)
    out.append(_eq("n=2 second-derivative value is 60 Delta_0", sd2, 60 * delta(m, 0)))
    out.append(_eq("n=2 interpolant second derivative", sd2, hilbert_interpolant(m2).deriv().deriv()(0)))

    if n >= 3:
        m3 = m.truncate(3)
        t3 = d_table(m3)
        E, D, C = t3.values
        a0, a1, a2, a3 = m3.alphas
        d0, d1 = delta(m3, 0), delta(m3, 1)
        out.append(_eq("E = D_{1,3}", E, 20 * (4 * a3 - 9 * a2 + 6 * a1 - a0)))
        out.append(_eq("D = D_{2,3}", D, 60 * (3 * a2 - 2 * a3 - a1)))
        out.append(_eq("C = D_{3,3}", C, 20 * (4 * a3 - 3 * a2)))
        out.append(_eq("A = 2/5 D + 3/5 E", A2, Fraction(2, 5) * D + Fraction(3, 5) * E))
        out.append(_eq("B = 3/5 C + 2/5 D", B2, Fraction(3, 5) * C + Fraction(2, 5) * D))
        out.append(_eq("C = E + 20 Delta_0", C, E + 20 * d0))
        out.append(_eq("D = C - 20 Delta_1", D, C - 20 * d1))
        g3 = reflect(m3)
        out.append(_eq("Delta_1 <= 0 iff Delta_0(g) <= Delta_1(g)", d1 <= 0, delta(g3, 0) <= delta(g3, 1)))
        V, U = second_derivative_values(m3).values
        out.append(_eq("V literal", V, 120 * (a0 - 9 * a1 + 18 * a2 - 10 * a3)))
        out.append(_eq("U literal", U, 120 * (3 * a1 - 12 * a2 + 10 * a3)))
    return out
