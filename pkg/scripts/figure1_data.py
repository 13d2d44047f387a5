"""Sample s_t and s_t' for the left-quadratic witness of (1, 1, 2) and write a CSV.

    python3 scripts/figure1_data.py --t 1/10 --samples 201 --out s_t.csv
"""

import argparse
import csv
from dataclasses import dataclass
from fractions import Fraction

from momentrange import MomentVector
from momentrange.exact import parse_rational
from momentrange.spline import LEFT_QUADRATIC, build, derivative_range, sample


@dataclass(frozen=True)
class Config:
    moments: tuple = (1, 1, 2)
    t: Fraction = Fraction(1, 10)
    samples: int = 201
    out: str = "s_t.csv"


def run(cfg: Config) -> None:
    w = build(LEFT_QUADRATIC, MomentVector(cfg.moments), cfg.t)
    with open(cfg.out, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["x", "s", "ds"])
        for x, v, dv in sample(w.spline, cfg.samples):
            out.writerow([float(x), float(v), float(dv)])
    lo, hi = derivative_range(w.spline)
    print(f"c = {w.coeffs['c']}, plateau slope = {w.plateau_slope} ~ {float(w.plateau_slope):.6f}")
    print(f"derivative range [{float(lo):.6f}, {float(hi):.6f}]; wrote {cfg.samples} rows to {cfg.out}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--t", default="1/10")
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--out", default=Config.out)
    a = p.parse_args()
    run(Config(t=parse_rational(a.t), samples=a.samples, out=a.out))
