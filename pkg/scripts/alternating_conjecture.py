"""Compare the alternating vertex (1, -1, 1, ...) with the exact cube maximum.

    python3 scripts/alternating_conjecture.py --n-max 16 --brute-force-to 10
"""

import argparse
import time
from dataclasses import dataclass

from momentrange.extremal import alternating_conjecture_check, brute_force_spread, maximize_spread


@dataclass(frozen=True)
class Config:
    n_max: int = 16
    brute_force_to: int = 10


def run(cfg: Config) -> None:
    print(f"{'n':>3} {'max width':>14} {'alternating':>14} attains  argmax")
    for row in alternating_conjecture_check(cfg.n_max):
        r = maximize_spread(row.n)
        argmax = "".join("+" if a > 0 else "-" for a in r.argmax)
        print(f"{row.n:>3} {str(row.max_width):>14} {str(row.alternating_width):>14} {str(row.attains):>7}  {argmax}")
    for n in range(2, cfg.brute_force_to + 1):
        t0 = time.perf_counter()
        value, _ = brute_force_spread(n)
        assert value == maximize_spread(n).max_width, n
        print(f"n={n}: vertex enumeration agrees ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=Config.n_max)
    p.add_argument("--brute-force-to", type=int, default=Config.brute_force_to)
    a = p.parse_args()
    run(Config(a.n_max, a.brute_force_to))
