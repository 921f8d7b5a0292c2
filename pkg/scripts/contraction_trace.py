"""Contraction solve on the piecewise map with the a-priori error bound."""
import argparse
import math
from dataclasses import dataclass

from conefix.cli import emit_trace
from conefix.cones import Orthant
from conefix.maps import Builtin
from conefix.solvers import contraction_solve


@dataclass
class Config:
    x0: float = 1.0
    c: float = 0.5
    tol: float = 1e-10


def main(cfg: Config):
    res = contraction_solve(Builtin("piecewise_contraction"), Orthant(1), [1.0], cfg.c,
                            [cfg.x0], tol=cfg.tol, delta=1.0)
    x_star = (1 - math.sqrt(0.96)) / 2
    print(emit_trace(res), end="")
    for k, x in enumerate(res.trace.iterates):
        err = abs(x[0] - x_star)
        print(f"k={k:2d} |x-x*|={err:.3e} bound={res.trace.bound_certificate[k]:.3e}")
    print(f"status={res.trace.status} x={float(res.fixed_point[0])!r} closed form={x_star!r}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-10)
    a = p.parse_args()
    main(Config(a.x0, a.c, a.tol))
