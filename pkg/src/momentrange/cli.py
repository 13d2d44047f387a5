"""Command-line interface.

Usage:
    moment-range analyze -m 1,2,3
    moment-range witness -m 1,1,2 --family left-quad --t 1/10 --samples 101 --format csv
    moment-range converge -m 1,1,2 --family symmetric --t geom:1/8:8
    moment-range maximize -n 3
    moment-range verify -m 1,2,3,4
    moment-range corollary-table --n-max 12

Exit codes: 0 success, 1 usage or parse error, 2 expected mathematical
degeneracy, 3 internal identity violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .bernstein import d_table, second_derivative_values
from .certificate import (
    NO_CERTIFICATE,
    WrongDegree,
    certificate,
    classify,
    problem2_bounds_n2,
    strictness_annotation,
)
from .exact import BitSizeExceeded, ParseError, parse_rational
from .extremal import alternating_conjecture_check, maximize_spread
from .identities import verify_identities
from .moments import MomentVector, deltas, linear_consistency, parse_moments
from .spline import (
    LEFT_QUADRATIC,
    N3,
    SYMMETRIC,
    DegenerateParameter,
    build,
    c1_check,
    convergence_study,
    derivative_range,
    geometric_ts,
    predicted_bound,
    sample,
    spline_moments,
    witness_report,
)

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_IDENTITY = 0, 1, 2, 3

FAMILY_NAMES = {"left-quad": LEFT_QUADRATIC, "symmetric": SYMMETRIC, "n3": N3}
DEFAULT_TS = "geom:1/8:8"


class UsageError(Exception):
    pass


class Degenerate(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def approx(x: Fraction) -> float:
    return float(x)


def decimal(x: Fraction) -> str:
    return f"{float(x):.12g}"


def parse_t_spec(spec: str) -> list[Fraction]:
    """A single rational, or ``geom:start:count[:ratio]`` (ratio defaults to 1/2)."""
    if spec.startswith("geom:"):
        parts = spec.split(":")[1:]
        if len(parts) not in (2, 3):
            raise UsageError(f"bad t-sequence {spec!r}; expected geom:start:count[:ratio]")
        start = parse_rational(parts[0])
        count = int(parts[1])
        ratio = parse_rational(parts[2]) if len(parts) == 3 else Fraction(1, 2)
        if count < 1 or not 0 < ratio < 1:
            raise UsageError(f"bad t-sequence {spec!r}")
        return geometric_ts(start, count, ratio)
    return [parse_rational(spec)]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- commands ---------------------------------------------------------------


def analyze_report(m: MomentVector) -> dict:
    cert = certificate(m)
    out: dict = {"moments": m.to_json()["alphas"], "n": m.n}
    out["deltas"] = [str(d) for d in deltas(m)]
    if m.n >= 1:
        out["D"] = d_table(m).to_json()["D"]
    body = cert.to_json()
    body["approx"] = {"A": approx(cert.A), "B": approx(cert.B)}
    cls = classify(m)
    if cls is not None:
        body["classification"] = cls.to_json()
    note = strictness_annotation(cert)
    body["notes"] = [note] if note else []
    out["certificate"] = body
    if m.n == 2:
        lo, hi = problem2_bounds_n2(m)
        out["problem2_bounds"] = {"lower": str(lo), "upper": str(hi)}
    if m.n >= 2:
        out["second_derivative"] = second_derivative_values(m).to_json()["D2"]
    fit = linear_consistency(m)
    out["linear"] = {"is_linear": fit.is_linear}
    if fit.is_linear:
        out["linear"].update(u=str(fit.coeffs[0]), v=str(fit.coeffs[1]))
    return out


def cmd_analyze(args) -> tuple[str, int]:
    m = parse_moments(args.moments)
    if certificate(m).status == NO_CERTIFICATE:
        raise Degenerate("no universal bound exists for a single moment")
    rep = analyze_report(m)
    if args.format == "json":
        return _dump(rep), EXIT_OK
    cert = rep["certificate"]
    lines = [f"moments: {','.join(rep['moments'])}", f"status: {cert['status']}", f"A = {cert['A']}", f"B = {cert['B']}"]
    lines += [f"D_{k} = {v}" for k, v in rep["D"].items()]
    lines += [f"Delta_{k} = {v}" for k, v in enumerate(rep["deltas"])]
    if "classification" in cert:
        c = cert["classification"]
        lines.append(f"case {c['case']}: A {c['A_status']}, B {c['B_status']}")
    if "problem2_bounds" in rep:
        lines.append(f"{rep['problem2_bounds']['lower']} <= L <= {rep['problem2_bounds']['upper']}")
    lines += [f"note: {n}" for n in cert["notes"]]
    return "\n".join(lines) + "\n", EXIT_OK


def _family(name: str) -> str:
    return FAMILY_NAMES[name]


def _sample_csv(s, count: int, exact: bool) -> str:
    header = ["x", "s", "ds"] + (["x_exact", "s_exact", "ds_exact"] if exact else [])
    rows = []
    for x, v, dv in sample(s, count):
        row = [decimal(x), decimal(v), decimal(dv)]
        if exact:
            row += [str(x), str(v), str(dv)]
        rows.append(row)
    return _csv(header, rows)


def cmd_witness(args) -> tuple[str, int]:
    m = parse_moments(args.moments)
    ts = parse_t_spec(args.t)
    if len(ts) != 1:
        raise UsageError("witness takes a single t")
    family = _family(args.family)
    try:
        w = build(family, m, ts[0])
    except DegenerateParameter as exc:
        raise Degenerate(str(exc)) from None
    table = _sample_csv(w.spline, args.samples, args.exact)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(table)
    if args.format == "csv":
        return table, EXIT_OK
    rep = witness_report(w, predicted_bound(family, m))
    lo, hi = derivative_range(w.spline)
    out = {
        "family": args.family,
        "t": str(w.t),
        "moments": m.to_json()["alphas"],
        "coefficients": {k: str(v) for k, v in w.coeffs.items()},
        "breakpoints": [str(b) for b in w.spline.breakpoints],
        "pieces": [str(p) for p in w.spline.pieces],
        "derivative_range": [str(lo), str(hi)],
        "width": str(hi - lo),
        "c1": c1_check(w.spline),
        "moments_reproduced": spline_moments(w.spline, m.n) == m,
        "report": rep.to_json(),
        "approx": {"derivative_range": [approx(lo), approx(hi)], "width": approx(hi - lo)},
    }
    if args.format == "json":
        return _dump(out), EXIT_OK
    lines = [f"{args.family} spline, t = {w.t}"]
    lines += [f"{k} = {v}" for k, v in out["coefficients"].items()]
    lines.append(f"derivative range: [{lo}, {hi}] (width {hi - lo})")
    return "\n".join(lines) + "\n" + table, EXIT_OK


def cmd_converge(args) -> tuple[str, int]:
    m = parse_moments(args.moments)
    family = _family(args.family)
    study = convergence_study(m, family, parse_t_spec(args.t))
    if not study.reports:
        raise Degenerate("every t in the sequence is degenerate")
    header = ["t", "achieved", "predicted", "error", "derivative_min", "derivative_max"]
    rows = [
        [str(r.t), r.achieved, r.predicted_bound, r.error, r.derivative_min, r.derivative_max]
        for r in study.reports
    ]
    verdict = "PASS" if study.passed else "FAIL"
    if args.format == "json":
        out = {
            "family": args.family,
            "moments": m.to_json()["alphas"],
            "predicted_bound": str(study.predicted_bound),
            "reports": [r.to_json() for r in study.reports],
            "approx": [{"t": approx(r.t), "achieved": approx(r.achieved), "error": approx(r.error)} for r in study.reports],
            "skipped": [str(t) for t in study.skipped],
            "monotone": study.monotone,
            "halved": study.halved,
            "decay": verdict,
        }
        return _dump(out), EXIT_OK
    fmt = (lambda v: str(v)) if args.exact else (lambda v: v if isinstance(v, str) else decimal(v))
    table = _csv(header, [[fmt(v) for v in row] for row in rows])
    if args.format == "csv":
        return table, EXIT_OK
    tail = f"target {study.predicted_bound}; decay criterion {verdict}"
    if study.skipped:
        tail += f"; skipped degenerate t: {', '.join(map(str, study.skipped))}"
    return table + tail + "\n", EXIT_OK


def cmd_maximize(args) -> tuple[str, int]:
    if args.n < 2:
        raise UsageError(f"maximize needs n >= 2 (the spread is identically 0 for n={args.n})")
    res = maximize_spread(args.n)
    out = res.to_json()
    if args.alternating:
        out["alternating"] = [
            {"n": c.n, "alternating_width": str(c.alternating_width), "max_width": str(c.max_width), "attains": c.attains}
            for c in alternating_conjecture_check(args.n)
        ]
    if args.format == "json":
        return _dump(out), EXIT_OK
    lines = [f"n = {res.n}", f"max width = {res.max_width}", f"argmax = ({', '.join(out['argmax'])})", f"pair (k_max, k_min) = {res.achieving_pair}"]
    for c in out.get("alternating", []):
        lines.append(f"n={c['n']}: alternating {c['alternating_width']} max {c['max_width']} {'attains' if c['attains'] else 'misses'}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    m = parse_moments(args.moments)
    if m.n < 2:
        raise UsageError("verify needs at least three moments")
    checks = verify_identities(m)
    code = EXIT_OK if all(c.passed for c in checks) else EXIT_IDENTITY
    if args.format == "json":
        out = {
            "moments": m.to_json()["alphas"],
            "status": certificate(m).status,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
            "all_passed": code == EXIT_OK,
        }
        return _dump(out), code
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + ("" if c.passed else f"  ({c.detail})") for c in checks]
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} identities hold; certificate {certificate(m).status}")
    return "\n".join(lines) + "\n", code


def cmd_corollary_table(args) -> tuple[str, int]:
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    rows = []
    code = EXIT_OK
    for n in range(2, args.n_max + 1):
        cert = certificate(MomentVector(k + 1 for k in range(n + 1)))
        A_cf = -n * (n + 1) * (n + 2)
        B_cf = (n + 1) * (n + 2) * (2 * n + 1)
        ok = cert.A == A_cf and cert.B == B_cf
        if not ok:
            code = EXIT_IDENTITY
        rows.append({"n": n, "A": str(cert.A), "B": str(cert.B), "A_closed_form": str(A_cf), "B_closed_form": str(B_cf), "match": ok})
    if args.format == "json":
        return _dump({"rows": rows}), code
    header = list(rows[0])
    table = _csv(header, [[r[h] for h in header] for r in rows])
    return table, code


# --- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="moment-range", description="Certified derivative ranges from Hausdorff moments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_format="json", formats=("json", "text")):
        sp.add_argument("--format", choices=formats, default=default_format)

    a = sub.add_parser("analyze", help="certificate, functionals and case table for a moment vector")
    a.add_argument("-m", "--moments", required=True)
    common(a)
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("witness", help="build one extremal spline and sample it")
    w.add_argument("-m", "--moments", required=True)
    w.add_argument("--family", choices=sorted(FAMILY_NAMES), default="left-quad")
    w.add_argument("--t", default="1/10")
    w.add_argument("--samples", type=int, default=101)
    w.add_argument("--exact", action="store_true", help="add exact p/q columns to the CSV")
    w.add_argument("--csv", metavar="PATH", help="also write the sample table here")
    common(w, formats=("json", "csv", "text"))
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("converge", help="witness error along a decreasing t-sequence")
    c.add_argument("-m", "--moments", required=True)
    c.add_argument("--family", choices=sorted(FAMILY_NAMES), default="left-quad")
    c.add_argument("--t", default=DEFAULT_TS)
    c.add_argument("--exact", action="store_true")
    common(c, default_format="text", formats=("json", "csv", "text"))
    c.set_defaults(func=cmd_converge)

    x = sub.add_parser("maximize", help="maximum certificate width over [-1,1]^(n+1)")
    x.add_argument("-n", type=int, required=True)
    x.add_argument("--alternating", action="store_true", help="compare with (1,-1,1,...) for every degree up to n")
    common(x)
    x.set_defaults(func=cmd_maximize)

    v = sub.add_parser("verify", help="run the exact identity suite on a moment vector")
    v.add_argument("-m", "--moments", required=True)
    common(v, default_format="text")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("corollary-table", help="alpha_k = k+1 certificates against their closed forms")
    t.add_argument("--n-max", type=int, default=12)
    common(t, default_format="text", formats=("json", "text"))
    t.set_defaults(func=cmd_corollary_table)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if getattr(args, "samples", 2) < 2:
            raise UsageError("--samples must be at least 2")
        text, code = args.func(args)
    except (ParseError, UsageError, WrongDegree, BitSizeExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Degenerate as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except AssertionError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
