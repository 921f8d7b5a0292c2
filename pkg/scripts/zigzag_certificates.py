"""Run every certifier on the zigzag map and print verdicts and witnesses."""
import argparse
from dataclasses import dataclass

import numpy as np

from conefix import certify as C
from conefix.certify import SampleConfig
from conefix.cones import Orthant
from conefix.maps import Builtin


@dataclass
class Config:
    seed: int = 0
    samples: int = 10_000
    high: float = 8.0


def main(cfg: Config):
    f = Builtin("zigzag")
    K = Orthant(2)
    sc = SampleConfig(seed=cfg.seed, count=cfg.samples, low=(0.0, 0.0), high=(cfg.high,) * 2)
    print("I(2,0) =", f([2.0, 0.0]), " I(4,0) =", f([4.0, 0.0]))
    reports = {
        "monotone": C.check_monotone(f, K, sc),
        "sup_monotone": C.check_sup_monotone(f, K, sc),
        "norm_monotone": C.check_norm_monotone(f, K, [1.0, 1.0], sc),
        "scalable": C.check_scalable(f, K, sc),
    }
    for name, rep in reports.items():
        w = rep.witness or {}
        shown = {k: np.round(np.asarray(v, float), 4).tolist() for k, v in w.items()
                 if k in ("x", "x_prime", "alpha")}
        print(f"{name:>14}: {rep.verdict:<18} {shown}")
    rng = np.random.default_rng(cfg.seed)
    X = rng.uniform(0, cfg.high, (cfg.samples, 2))
    b = rng.uniform(0, 1, (cfg.samples, 1))
    gap = np.max(np.abs(f.batch(b * X) - b * f.batch(X)), axis=1)
    print(f"homogeneity gap > 1e-12 on {int(np.sum(gap > 1e-12))}/{cfg.samples} samples, "
          f"max {gap.max():.3g}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    a = p.parse_args()
    main(Config(a.seed, a.samples))
