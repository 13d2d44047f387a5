"""Print witness convergence tables for the three spline families.

    python3 scripts/convergence_tables.py --count 12
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from momentrange import MomentVector
from momentrange.spline import LEFT_QUADRATIC, N3, SYMMETRIC, build, convergence_study, geometric_ts


@dataclass(frozen=True)
class Config:
    start: Fraction = Fraction(1, 8)
    count: int = 8


CASES = [
    (LEFT_QUADRATIC, (1, 1, 2)),
    (SYMMETRIC, (1, 1, 2)),
    (N3, (0, 0, 1, 1)),
]


def run(cfg: Config) -> None:
    ts = geometric_ts(cfg.start, cfg.count)
    for family, alphas in CASES:
        m = MomentVector(alphas)
        study = convergence_study(m, family, ts)
        print(f"\n{family} {alphas}: target {study.predicted_bound}")
        header = f"{'t':>10} {'achieved':>14} {'error':>12}"
        if family == N3:
            header += f" {'c*t^3':>10} {'d*t^3':>10}"
        print(header)
        for r in study.reports:
            line = f"{str(r.t):>10} {float(r.achieved):14.6f} {float(r.error):12.3e}"
            if family == N3:
                w = build(N3, m, r.t)
                line += f" {float(w.coeffs['c'] * r.t**3):10.4f} {float(w.coeffs['d'] * r.t**3):10.4f}"
            print(line)
        print(f"monotone decay: {study.monotone}; halving: {study.halved}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=Config.count)
    run(Config(count=p.parse_args().count))
