"""Locate the fixed points of the one-neuron sigmoid map and check them
against plain iteration and brentq."""
import argparse
import time
from dataclasses import dataclass

from scipy.optimize import brentq

from conefix.degree import Interval, degree_1d, locate_fixed_points
from conefix.maps import Builtin
from conefix.solvers import iterate


@dataclass
class Config:
    low: float = 0.0
    high: float = 1.0
    depth: int = 20


def main(cfg: Config):
    f = Builtin("example3")
    t0 = time.perf_counter()
    rep = locate_fixed_points(f, Interval(cfg.low, cfg.high), max_depth=cfg.depth)
    dt = time.perf_counter() - t0
    print(f"degree on [{cfg.low}, {cfg.high}]: {degree_1d(f, (cfg.low, cfg.high)).degree}")
    print(f"{'box':>32} {'deg':>4} {'point':>20} {'brentq':>20}")
    for b in rep.boxes:
        ref = brentq(lambda t: f([t])[0] - t, b.low[0], b.high[0], xtol=1e-15)
        print(f"[{b.low[0]:.12f}, {b.high[0]:.12f}] {b.degree:>4d} {b.point[0]:>20.15f} "
              f"{ref:>20.15f}")
    print(f"located in {dt:.4f}s")
    for x0 in (0.3, 0.6):
        res = iterate(f, [x0])
        print(f"iterate from {x0}: {res.fixed_point[0]:.12f} after {res.trace.iterations} steps")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--low", type=float, default=0.0)
    p.add_argument("--high", type=float, default=1.0)
    p.add_argument("--depth", type=int, default=20)
    a = p.parse_args()
    main(Config(a.low, a.high, a.depth))
