"""Scan ice-cream cones around (1, 1) for invariance under the unimodal layer.

Prints the angle of f(0) from the axis, the monotonicity rate for each
candidate beta, and the widest cone (if any) that survives sampling.
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from conefix import certify as C
from conefix.certify import SampleConfig
from conefix.cones import IceCream
from conefix.maps import unimodal_sigmoid_layer


@dataclass
class Config:
    seed: int = 0
    samples: int = 100_000
    steps: int = 12


def main(cfg: Config):
    f = unimodal_sigmoid_layer()
    f0 = f([0.0, 0.0])
    ang = math.degrees(math.acos(f0.sum() / (math.sqrt(2) * np.linalg.norm(f0))))
    target = math.degrees(math.atan(10 / 9))
    print(f"f(0) = {f0}, angle from axis {ang:.4f} deg; candidate half-angle {target:.4f} deg")
    sc = SampleConfig(seed=cfg.seed, count=cfg.samples, low=(-1.0, -1.0), high=(2.0, 2.0))
    betas = np.cos(np.radians(np.linspace(target, 1.0, cfg.steps)))
    for b in betas:
        rep = C.check_monotone(f, IceCream((1.0, 1.0), float(b)), sc)
        print(f"beta={b:.5f} half-angle={math.degrees(math.acos(b)):7.3f} deg "
              f"monotone={rep.verdict}")
    found, rep = C.find_invariant_icecream(f, [1.0, 1.0], betas.tolist(), sc)
    print("widest invariant cone:", "none" if found is None else f"beta={found:.5f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100_000)
    a = p.parse_args()
    main(Config(a.seed, a.samples))
