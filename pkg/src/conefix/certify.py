"""Sampling certifiers for cone-order properties of maps.

A certifier either returns a concrete counterexample (``verdict="violated"``
with a replayable witness) or reports how many samples it tried without
finding one.  "No violation found" is evidence, never a proof.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .cones import Cone, IceCream, Orthant, as_vector, delta_K, weighted_max_norm
from .maps import Map

NO_VIOLATION = "no_violation_found"
VIOLATED = "violated"
STRENGTHS = ("monotone", "strict", "strong")
SCALE_STRENGTHS = ("weak", "strict", "strong")


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    count: int = 10_000
    low: tuple | None = None
    high: tuple | None = None
    alpha_range: tuple = (1.0, 4.0)
    theta_range: tuple | None = None
    eps_range: tuple = (1e-3, 1.0)
    magnitude_range: tuple = (1e-3, 1.0)
    level_range: tuple | None = None
    threads: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.low is not None and self.high is not None:
            lo, hi = np.atleast_1d(self.low), np.atleast_1d(self.high)
            if lo.shape == hi.shape and np.any(lo > hi):
                raise ValueError("region low must not exceed high")

    def box(self, dim: int) -> tuple[np.ndarray, np.ndarray]:
        low = np.zeros(dim) if self.low is None else np.broadcast_to(
            np.asarray(self.low, dtype=float), (dim,)).copy()
        high = np.ones(dim) if self.high is None else np.broadcast_to(
            np.asarray(self.high, dtype=float), (dim,)).copy()
        if np.any(low > high):
            raise ValueError("region low must not exceed high")
        return low, high

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = [float(t) for t in v]
        return d


@dataclass
class PropertyReport:
    property: str
    verdict: str
    witness: dict | None
    samples_tested: int
    config: dict
    details: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class FeasiblePoint:
    x: np.ndarray
    grade: str
    residual: np.ndarray

    def to_dict(self):
        return {"x": self.x.tolist(), "grade": self.grade, "residual": self.residual.tolist()}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return obj


# -- sampling -----------------------------------------------------------------

def evaluate(m: Map, X: np.ndarray, threads: int = 1, chunk: int = 4096) -> np.ndarray:
    """Batched evaluation; chunks are split by index so the result does not
    depend on ``threads``."""
    X = np.asarray(X, dtype=float)
    if threads <= 1 or len(X) <= chunk:
        return m.batch(X)
    parts = [X[i:i + chunk] for i in range(0, len(X), chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.vstack(list(pool.map(m.batch, parts)))


def _uniform_box(rng, low, high, n):
    return low + (high - low) * rng.random((n, low.size))


def cone_directions(cone: Cone, rng: np.random.Generator, n: int) -> np.ndarray:
    """Unit vectors of K (random, not uniformly distributed)."""
    dim = cone.dim
    if isinstance(cone, Orthant):
        g = np.abs(rng.standard_normal((n, dim)))
        return g / np.linalg.norm(g, axis=1, keepdims=True)
    a = cone.axis
    if dim == 1:
        return np.tile(a, (n, 1))
    half = math.acos(cone.beta)
    theta = half * rng.random(n)
    u = rng.standard_normal((n, dim))
    u -= np.outer(u @ a, a)
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return np.cos(theta)[:, None] * a + np.sin(theta)[:, None] * u


def ordered_pairs(cone: Cone, cfg: SampleConfig, rng=None, n: int | None = None):
    """Pairs ``x <_K x'`` inside the sampling box.

    ``x`` is uniform in the box; ``x' = x + r k`` with ``k`` a unit cone
    direction and ``r`` log-uniform over ``magnitude_range`` times the box
    diameter.  Pairs with ``x'`` outside the box are discarded.
    """
    rng = cfg.rng() if rng is None else rng
    n = cfg.count if n is None else n
    low, high = cfg.box(cone.dim)
    scale = float(np.max(high - low))
    if scale <= 0:
        raise ValueError("region too small to generate ordered pairs")
    lo, hi = (math.log10(t * scale) for t in cfg.magnitude_range)
    xs, xps = [], []
    got, drawn = 0, 0
    while got < n:
        batch = max(256, 2 * (n - got))
        x = _uniform_box(rng, low, high, batch)
        k = cone_directions(cone, rng, batch)
        r = 10.0 ** rng.uniform(lo, hi, batch)
        xp = x + r[:, None] * k
        keep = np.all((xp >= low) & (xp <= high), axis=1) & np.any(xp != x, axis=1)
        keep &= cone.contains(xp - x)
        xs.append(x[keep])
        xps.append(xp[keep])
        got += int(keep.sum())
        drawn += batch
        if drawn > 200 * n + 10_000 and got < 0.005 * drawn:
            raise ValueError("region too small to generate ordered pairs")
    return np.vstack(xs)[:n], np.vstack(xps)[:n]


def cone_points(cone: Cone, cfg: SampleConfig, rng=None, n: int | None = None):
    """Uniform samples of the box restricted to the cone (rejection)."""
    rng = cfg.rng() if rng is None else rng
    n = cfg.count if n is None else n
    low, high = cfg.box(cone.dim)
    out, got, drawn = [], 0, 0
    while got < n:
        batch = max(256, 2 * (n - got))
        x = _uniform_box(rng, low, high, batch)
        x = x[cone.contains(x)]
        out.append(x)
        got += len(x)
        drawn += batch
        if drawn > 200 * n + 10_000 and got < 0.005 * drawn:
            raise ValueError("sampling region does not meet the cone")
    return np.vstack(out)[:n]


def _rel(cone: Cone, lhs, rhs, strength: str) -> np.ndarray:
    """Vectorized ``lhs {<=, <, <<}_K rhs``."""
    d = rhs - lhs
    if strength in ("monotone", "weak"):
        return cone.contains(d)
    if strength == "strict":
        return cone.contains(d) & np.any(d != 0, axis=-1)
    if strength == "strong":
        if not cone.solid:
            raise ValueError("strong relations need a solid cone")
        return cone.contains(d, interior=True)
    raise ValueError(f"unknown strength {strength!r}")


def _first(ok: np.ndarray):
    bad = np.flatnonzero(~ok)
    return int(bad[0]) if bad.size else None


# -- pointwise predicates (shared by certifiers and witness replay) ------------

def monotone_holds(m, cone, x, xp, strength="monotone", threads=1):
    fx, fxp = evaluate(m, x, threads), evaluate(m, xp, threads)
    return _rel(cone, fx, fxp, strength), fx, fxp


def sup_monotone_holds(m, cone, x, xp, strength="monotone", threads=1):
    if not isinstance(cone, Orthant):
        raise ValueError("sup-monotonicity is defined for the orthant order only")
    fx, fxp = evaluate(m, x, threads), evaluate(m, xp, threads)
    rhs = np.maximum(xp, fxp)
    return _rel(cone, fx, rhs, strength), fx, rhs


def scalable_holds(m, cone, x, alpha, strength="weak", threads=1):
    alpha = np.asarray(alpha, dtype=float)[:, None]
    lhs = evaluate(m, alpha * x, threads)
    rhs = alpha * evaluate(m, x, threads)
    return _rel(cone, lhs, rhs, strength), lhs, rhs


def subhomogeneous_holds(m, cone, x, theta, strength="weak", threads=1):
    theta = np.asarray(theta, dtype=float)[:, None]
    lhs = theta * evaluate(m, x, threads)
    rhs = evaluate(m, theta * x, threads)
    return _rel(cone, lhs, rhs, strength), lhs, rhs


def norm_monotone_holds(m, cone, x, xp, v, tau=1e-12, threads=1):
    a = weighted_max_norm(evaluate(m, x, threads), v)
    b = weighted_max_norm(evaluate(m, xp, threads), v)
    return a <= b + tau, a, b


def _residual_pairs(m, x, xp, threads=1):
    r = evaluate(m, x, threads) - x
    rp = evaluate(m, xp, threads) - xp
    return r, rp


def guiding_holds(m, x, xp, cos_gamma=0.0, tau=1e-12, threads=1):
    r, rp = _residual_pairs(m, x, xp, threads)
    inner = np.einsum("ij,ij->i", r, rp)
    bound = cos_gamma * np.linalg.norm(r, axis=1) * np.linalg.norm(rp, axis=1)
    return inner >= bound - tau, inner, bound


def _cos_gamma(gamma: float) -> float:
    c = math.cos(gamma)
    return 0.0 if abs(c) < 1e-15 else c


# -- certifiers -------------------------------------------------------------------

def _report(prop, ok, witness_fn, n, cfg, **details):
    i = _first(ok)
    if i is None:
        return PropertyReport(prop, NO_VIOLATION, None, n, cfg.to_dict(), details)
    return PropertyReport(prop, VIOLATED, witness_fn(i), n, cfg.to_dict(), details)


def _check_strength(strength, allowed):
    if strength not in allowed:
        raise ValueError(f"strength must be one of {allowed}, got {strength!r}")


def _pair_witness(x, xp, lhs, rhs):
    return lambda i: {"x": x[i], "x_prime": xp[i], "lhs": lhs[i], "rhs": rhs[i]}


def _with_candidates(x, xp, pairs):
    if not pairs:
        return x, xp
    cx = np.array([as_vector(p[0]) for p in pairs])
    cxp = np.array([as_vector(p[1]) for p in pairs])
    return np.vstack([cx, x]), np.vstack([cxp, xp])


def check_monotone(m: Map, cone: Cone, cfg: SampleConfig, strength: str = "monotone",
                   pairs: Sequence | None = None) -> PropertyReport:
    """Search ordered pairs ``x <_K x'`` for ``f(x) {<=,<,<<}_K f(x')`` failures.

    Explicit ``pairs`` are tested ahead of the random sample.
    """
    _check_strength(strength, STRENGTHS)
    if strength == "strong" and not cone.solid:
        raise ValueError("strong monotonicity needs a solid cone")
    x, xp = _with_candidates(*ordered_pairs(cone, cfg), pairs)
    ok, fx, fxp = monotone_holds(m, cone, x, xp, strength, cfg.threads)
    return _report("monotone", ok, _pair_witness(x, xp, fx, fxp), len(x), cfg,
                   strength=strength)


def check_sup_monotone(m: Map, cone: Cone, cfg: SampleConfig, strength: str = "monotone",
                       pairs: Sequence | None = None) -> PropertyReport:
    _check_strength(strength, STRENGTHS)
    if not isinstance(cone, Orthant):
        raise ValueError("sup-monotonicity is defined for the orthant order only")
    x, xp = _with_candidates(*ordered_pairs(cone, cfg), pairs)
    ok, fx, rhs = sup_monotone_holds(m, cone, x, xp, strength, cfg.threads)
    return _report("sup_monotone", ok, _pair_witness(x, xp, fx, rhs), len(x), cfg,
                   strength=strength)


def _open_range(rng, r, n, lo_bound, hi_bound, label):
    lo, hi = float(r[0]), float(r[1])
    if not (lo_bound <= lo < hi <= hi_bound):
        raise ValueError(f"{label} must lie within ({lo_bound}, {hi_bound})")
    u = 1.0 - rng.random(n)  # (0, 1]
    t = lo + (hi - lo) * u
    if hi == hi_bound:
        t = np.minimum(t, np.nextafter(hi_bound, lo_bound))
    return t


def scaling_samples(cone: Cone, cfg: SampleConfig):
    rng = cfg.rng()
    x = cone_points(cone, cfg, rng)
    alpha = _open_range(rng, cfg.alpha_range, len(x), 1.0, math.inf, "alpha_range")
    return x, alpha


def check_scalable(m: Map, cone: Cone, cfg: SampleConfig, strength: str = "weak",
                   points: Sequence | None = None) -> PropertyReport:
    """Test ``f(a x) {<=,<,<<}_K a f(x)`` for ``a`` in ``alpha_range``.

    ``points`` holds optional explicit ``(x, alpha)`` pairs tested first.
    """
    _check_strength(strength, SCALE_STRENGTHS)
    x, alpha = scaling_samples(cone, cfg)
    if points:
        x = np.vstack([np.array([as_vector(p[0]) for p in points]), x])
        alpha = np.concatenate([[float(p[1]) for p in points], alpha])
    ok, lhs, rhs = scalable_holds(m, cone, x, alpha, strength, cfg.threads)
    wit = lambda i: {"x": x[i], "alpha": float(alpha[i]), "lhs": lhs[i], "rhs": rhs[i]}
    return _report("scalable", ok, wit, len(x), cfg, strength=strength)


def check_subhomogeneous(m: Map, cone: Cone, cfg: SampleConfig,
                         strength: str = "weak") -> PropertyReport:
    """Test ``theta f(x) {<=,<,<<}_K f(theta x)`` for ``theta`` in ``theta_range``.

    Without an explicit ``theta_range`` the reciprocal of ``alpha_range`` is used.
    """
    _check_strength(strength, SCALE_STRENGTHS)
    rng = cfg.rng()
    x = cone_points(cone, cfg, rng)
    tr = cfg.theta_range
    if tr is None:
        tr = (1.0 / cfg.alpha_range[1], 1.0 / cfg.alpha_range[0])
    theta = _open_range(rng, tr, len(x), 0.0, 1.0, "theta_range")
    if strength == "strong":
        keep = cone.contains(x, interior=True)
        x, theta = x[keep], theta[keep]
    ok, lhs, rhs = subhomogeneous_holds(m, cone, x, theta, strength, cfg.threads)
    wit = lambda i: {"x": x[i], "theta": float(theta[i]), "lhs": lhs[i], "rhs": rhs[i]}
    return _report("subhomogeneous", ok, wit, len(x), cfg, strength=strength)


def estimate_contraction(m: Map, cone: Cone, w, cfg: SampleConfig,
                         c_max: float = 1e8) -> tuple[float, PropertyReport]:
    """Largest per-sample ``c`` needed for ``f(x + e w) <=_K f(x) + c e w``.

    The verdict is ``violated`` when the estimate reaches 1; the details also
    say whether ``c * delta(K) < 1``.
    """
    w = as_vector(w, cone.dim, "w")
    if not cone.contains(w, interior=True):
        raise ValueError("w must lie in the interior of the cone")
    rng = cfg.rng()
    x = cone_points(cone, cfg, rng)
    lo, hi = (math.log10(t) for t in cfg.eps_range)
    eps = 10.0 ** rng.uniform(lo, hi, len(x))
    c = _smallest_c(m, cone, x, eps, w, c_max, cfg.threads)
    i = int(np.argmax(c))
    c_hat = float(c[i])
    try:
        delta = delta_K(cone, w, resolution=200)
    except ValueError:
        delta = math.inf
    details = {"c_hat": c_hat, "contractive": c_hat < 1.0, "delta_K": delta,
               "certified": c_hat * delta < 1.0}
    witness = {"x": x[i], "eps": float(eps[i]), "c": c_hat, "w": w}
    verdict = VIOLATED if c_hat >= 1.0 else NO_VIOLATION
    return c_hat, PropertyReport("contractive", verdict, witness if verdict == VIOLATED else None,
                                 len(x), cfg.to_dict(), details)


def _smallest_c(m, cone, x, eps, w, c_max=1e8, threads=1):
    d = evaluate(m, x + eps[:, None] * w, threads) - evaluate(m, x, threads)
    if isinstance(cone, Orthant):
        return np.maximum(np.max(d / (eps[:, None] * w), axis=1), 0.0)
    return _bisect_c(cone, d, eps, w, c_max)


def _bisect_c(cone, d, eps, w, c_max, iters=80):
    ok = lambda c: cone.contains(c[:, None] * eps[:, None] * w - d)
    n = len(d)
    lo = np.zeros(n)
    hi = np.ones(n)
    zero_ok = ok(lo)
    while True:
        bad = ~ok(hi)
        if not bad.any():
            break
        if np.any(hi[bad] > c_max):
            raise ValueError("relation unsatisfiable: no finite contraction constant fits")
        hi[bad] *= 2.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        good = ok(mid)
        hi = np.where(good, mid, hi)
        lo = np.where(good, lo, mid)
    return np.where(zero_ok, 0.0, hi)


def positivity_grade(cone: Cone, x) -> str:
    if cone.solid and bool(cone.contains(x, interior=True)):
        return "strongly_feasible"
    if np.any(np.asarray(x) != 0):
        return "strictly_feasible"
    return "feasible"


def find_feasible(m: Map, cone: Cone, cfg: SampleConfig,
                  candidates: Sequence | None = None) -> list[FeasiblePoint]:
    """Points ``x >=_K 0`` of the region with ``f(x) <=_K x``, graded by the
    positivity of ``x``.  ``candidates`` are tested before the random sample."""
    x = cone_points(cone, cfg)
    if candidates is not None and len(candidates):
        c = np.array([as_vector(p, cone.dim) for p in candidates])
        c = c[cone.contains(c)]
        x = np.vstack([c, x])
    fx = evaluate(m, x, cfg.threads)
    keep = np.flatnonzero(cone.contains(x - fx))
    return [FeasiblePoint(x[i], positivity_grade(cone, x[i]), x[i] - fx[i]) for i in keep]


def sup_sphere_points(cone: Cone, R: float, rng, n: int) -> np.ndarray:
    """Points of ``{||x||_inf = R}`` inside the cone."""
    dim = cone.dim
    out, got, drawn = [], 0, 0
    while got < n:
        batch = max(64, 2 * (n - got))
        if isinstance(cone, Orthant):
            x = R * rng.random((batch, dim))
            j = rng.integers(0, dim, batch)
            x[np.arange(batch), j] = R
        else:
            x = R * (2.0 * rng.random((batch, dim)) - 1.0)
            j = rng.integers(0, dim, batch)
            x[np.arange(batch), j] = R * rng.choice([-1.0, 1.0], batch)
            x = x[cone.contains(x)]
        out.append(x)
        got += len(x)
        drawn += batch
        if drawn > 500 * n + 10_000 and got == 0:
            return np.empty((0, dim))
    return np.vstack(out)[:n]


def probe_Sf_bounded(m: Map, cone: Cone, radii: Sequence[float],
                     cfg: SampleConfig) -> PropertyReport:
    """Look for feasible points ``f(x) <=_K x`` on sup-norm spheres of growing radius.

    ``violated`` means feasible points persist at the largest radius, which
    is evidence that the feasible set is unbounded.
    """
    radii = [float(r) for r in radii]
    if not radii:
        raise ValueError("radius schedule must be nonempty")
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise ValueError("radii must be positive and increasing")
    rng = cfg.rng()
    per_radius, last, witness = [], None, None
    exit_top = None
    tested = 0
    for R in radii:
        x = sup_sphere_points(cone, R, rng, cfg.count)
        tested += len(x)
        if len(x) == 0:
            per_radius.append({"radius": R, "sampled": 0, "feasible": 0, "exits_ball": True})
            exit_top = True
            continue
        fx = evaluate(m, x, cfg.threads)
        feas = cone.contains(x - fx)
        exits = bool(np.all(np.max(np.abs(fx), axis=1) > R))
        per_radius.append({"radius": R, "sampled": len(x), "feasible": int(feas.sum()),
                           "exits_ball": exits})
        exit_top = exits
        if feas.any():
            last = R
            i = int(np.flatnonzero(feas)[0])
            witness = {"x": x[i], "fx": fx[i], "radius": R}
    unbounded = per_radius[-1]["feasible"] > 0
    details = {"per_radius": per_radius, "last_feasible_radius": last,
               "exit_condition_at_top": exit_top, "empty": last is None}
    return PropertyReport("sf_bounded", VIOLATED if unbounded else NO_VIOLATION,
                          witness if unbounded else None, tested, cfg.to_dict(), details)


def equal_l1_pairs(dim: int, cfg: SampleConfig, rng=None):
    """Two independent points of the simplex ``{x >= 0, sum x = s}`` per level ``s``."""
    rng = cfg.rng() if rng is None else rng
    low, high = cfg.box(dim)
    lr = cfg.level_range
    if lr is None:
        lr = (float(np.sum(np.maximum(low, 0))), float(np.sum(np.maximum(high, 0))))
    s = rng.uniform(lr[0], lr[1], cfg.count)
    a = np.ones(dim)
    x = rng.dirichlet(a, cfg.count) * s[:, None]
    xp = rng.dirichlet(a, cfg.count) * s[:, None]
    return x, xp


def check_guiding_G(m: Map, cfg: SampleConfig) -> PropertyReport:
    """Residuals ``f(x) - x`` at equal 1-norm points must not point apart."""
    x, xp = equal_l1_pairs(m.in_dim, cfg)
    ok, inner, _ = guiding_holds(m, x, xp, 0.0, threads=cfg.threads)
    wit = lambda i: {"x": x[i], "x_prime": xp[i], "lhs": float(inner[i]), "rhs": 0.0}
    return _report("guiding_g", ok, wit, len(x), cfg)


def check_guiding_G2(m: Map, gamma: float, cfg: SampleConfig) -> PropertyReport:
    """Angle form of the guiding condition; also reports the smallest cosine
    between residuals seen (1 by convention when a residual vanishes)."""
    if not -math.pi / 2 <= gamma <= math.pi / 2:
        raise ValueError("gamma must lie in [-pi/2, pi/2]")
    x, xp = equal_l1_pairs(m.in_dim, cfg)
    cg = _cos_gamma(gamma)
    ok, inner, bound = guiding_holds(m, x, xp, cg, threads=cfg.threads)
    r, rp = _residual_pairs(m, x, xp, cfg.threads)
    nr = np.linalg.norm(r, axis=1) * np.linalg.norm(rp, axis=1)
    cos = np.ones(len(x))
    nz = nr > 0
    cos[nz] = np.clip(inner[nz] / nr[nz], -1.0, 1.0)
    wit = lambda i: {"x": x[i], "x_prime": xp[i], "lhs": float(inner[i]),
                     "rhs": float(bound[i]), "gamma": gamma}
    return _report("guiding_g2", ok, wit, len(x), cfg, gamma=gamma,
                   min_cosine=float(cos.min()))


def check_norm_monotone(m: Map, cone: Cone, v, cfg: SampleConfig,
                        pairs: Sequence | None = None) -> PropertyReport:
    v = as_vector(v, m.out_dim, "v")
    if np.any(v <= 0):
        raise ValueError("v must be strictly positive")
    x, xp = _with_candidates(*ordered_pairs(cone, cfg), pairs)
    ok, a, b = norm_monotone_holds(m, cone, x, xp, v, threads=cfg.threads)
    wit = lambda i: {"x": x[i], "x_prime": xp[i], "lhs": float(a[i]), "rhs": float(b[i]),
                     "v": v}
    return _report("norm_monotone", ok, wit, len(x), cfg, v=v.tolist())


def find_invariant_icecream(m: Map, axis, beta_grid: Sequence[float],
                            cfg: SampleConfig) -> tuple[float | None, PropertyReport]:
    """First ``beta`` of the grid whose cone ``C(axis, beta)`` shows no sampled
    violation of ``f(K ∩ region) ⊂ K`` nor of K-monotonicity."""
    axis = as_vector(axis, m.in_dim, "axis")
    tried = []
    for beta in beta_grid:
        cone = IceCream(axis, float(beta))
        entry = {"beta": float(beta)}
        try:
            pts = cone_points(cone, cfg)
            inside = cone.contains(evaluate(m, pts, cfg.threads))
            i = _first(inside)
            entry["invariance_violation"] = None if i is None else {"x": pts[i]}
        except ValueError:
            entry["invariance_violation"] = None
            pts = np.empty((0, cone.dim))
        mono = check_monotone(m, cone, cfg)
        entry["monotone_violation"] = mono.witness
        entry["samples"] = len(pts) + mono.samples_tested
        tried.append(entry)
        if entry["invariance_violation"] is None and mono.witness is None:
            rep = PropertyReport("invariant_cone", NO_VIOLATION, None,
                                 sum(e["samples"] for e in tried), cfg.to_dict(),
                                 {"beta_star": float(beta), "axis": axis.tolist(), "tried": tried})
            return float(beta), rep
    last = tried[-1] if tried else None
    witness = None
    if last is not None:
        witness = last["invariance_violation"] or last["monotone_violation"]
        if witness is not None:
            witness = dict(witness, beta=last["beta"])
    rep = PropertyReport("invariant_cone", VIOLATED, witness,
                         sum(e["samples"] for e in tried), cfg.to_dict(),
                         {"beta_star": None, "axis": axis.tolist(), "tried": tried})
    return None, rep


def replay(report: PropertyReport, m: Map, cone: Cone | None = None) -> bool:
    """Re-evaluate a violated report's witness; True when the violation reproduces."""
    if not report.violated:
        raise ValueError("report has no witness")
    w = report.witness
    prop = report.property
    strength = report.details.get("strength", "monotone")
    one = lambda key: np.asarray(w[key], dtype=float)[None, :]
    if prop == "monotone":
        ok, *_ = monotone_holds(m, cone, one("x"), one("x_prime"), strength)
    elif prop == "sup_monotone":
        ok, *_ = sup_monotone_holds(m, cone, one("x"), one("x_prime"), strength)
    elif prop == "scalable":
        ok, *_ = scalable_holds(m, cone, one("x"), [w["alpha"]], strength)
    elif prop == "subhomogeneous":
        ok, *_ = subhomogeneous_holds(m, cone, one("x"), [w["theta"]], strength)
    elif prop == "norm_monotone":
        ok, *_ = norm_monotone_holds(m, cone, one("x"), one("x_prime"), np.asarray(w["v"]))
    elif prop == "guiding_g":
        ok, *_ = guiding_holds(m, one("x"), one("x_prime"), 0.0)
    elif prop == "guiding_g2":
        ok, *_ = guiding_holds(m, one("x"), one("x_prime"), _cos_gamma(w["gamma"]))
    elif prop == "contractive":
        c = _smallest_c(m, cone, one("x"), np.array([w["eps"]]), np.asarray(w["w"], dtype=float))
        ok = c < 1.0
    elif prop == "sf_bounded":
        x = one("x")
        ok = ~cone.contains(x - m.batch(x))
    else:
        raise ValueError(f"cannot replay property {prop!r}")
    return bool(not ok[0])
