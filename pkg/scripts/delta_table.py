"""Table of opening angle and delta(K) for ice-cream cones around (1, 1)."""
import argparse
import math
from dataclasses import dataclass

from conefix.cones import IceCream, Orthant, delta_K, opening_angle


@dataclass
class Config:
    betas: tuple = (0.5, 0.6, 0.7, math.sqrt(2) / 2, 0.8, 0.9, 0.99)
    resolution: int = 1000


def main(cfg: Config):
    print(f"{'cone':>22} {'angle (deg)':>12} {'delta':>12}")
    print(f"{'orthant R^2':>22} {math.degrees(opening_angle(Orthant(2))):>12.4f} "
          f"{delta_K(Orthant(2), [1, 1], method='analytic'):>12.6f}")
    for b in cfg.betas:
        K = IceCream((1.0, 1.0), b)
        d = delta_K(K, [1.0, 1.0], resolution=cfg.resolution)
        print(f"{f'C((1,1), {b:.4f})':>22} {math.degrees(opening_angle(K)):>12.4f} {d:>12.6f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--resolution", type=int, default=1000)
    a = p.parse_args()
    main(Config(resolution=a.resolution))
