"""Cones in R^N, the partial orders they induce, and related norms.

Two cone families are supported: the nonnegative orthant and the ice-cream
cone ``C(w, beta) = {v : <v, w> >= beta |v| |w|}``.  All membership tests
accept arrays of shape ``(..., N)`` and broadcast over the leading axes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

TAU = 1e-12


def as_vector(x, dim: int | None = None, name: str = "x") -> np.ndarray:
    """Return ``x`` as a finite 1-D float array, checking its length."""
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {v.shape}")
    if v.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    if dim is not None and v.size != dim:
        raise ValueError(f"dimension mismatch: {name} has {v.size} entries, expected {dim}")
    return v


@dataclass(frozen=True)
class OrderRelation:
    leq: bool
    lt: bool
    ll: bool


@dataclass(frozen=True)
class Orthant:
    dim: int
    tau: float = TAU

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("orthant dimension must be positive")

    @property
    def solid(self) -> bool:
        return True

    def contains(self, v, interior: bool = False):
        v = _check_dim(v, self.dim)
        if interior:
            return np.all(v > self.tau, axis=-1)
        return np.all(v >= -self.tau, axis=-1)

    def to_spec(self) -> dict:
        return {"type": "orthant", "dim": self.dim}


@dataclass(frozen=True)
class IceCream:
    w: np.ndarray
    beta: float
    tau: float = TAU
    _unit: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        w = as_vector(self.w, name="axis w")
        if not np.any(w != 0):
            raise ValueError("ice-cream axis must be nonzero")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        unit = w / np.linalg.norm(w)
        unit.setflags(write=False)
        object.__setattr__(self, "_unit", unit)

    def __eq__(self, other):
        return (isinstance(other, IceCream) and self.beta == other.beta
                and np.array_equal(self.w, other.w) and self.tau == other.tau)

    def __hash__(self):
        return hash((tuple(self.w), self.beta, self.tau))

    @property
    def dim(self) -> int:
        return self.w.size

    @property
    def axis(self) -> np.ndarray:
        return self._unit

    @property
    def solid(self) -> bool:
        return self.beta < 1.0

    def contains(self, v, interior: bool = False):
        v = _check_dim(v, self.dim)
        lhs = v @ self._unit
        rhs = self.beta * np.linalg.norm(v, axis=-1)
        if interior:
            return lhs - self.tau > rhs
        return lhs + self.tau >= rhs

    def to_spec(self) -> dict:
        return {"type": "ice_cream", "w": self.w.tolist(), "beta": self.beta}


Cone = Union[Orthant, IceCream]


def _check_dim(v, dim):
    v = np.asarray(v, dtype=float)
    if v.shape[-1:] != (dim,):
        raise ValueError(f"dimension mismatch: got shape {v.shape}, cone dimension {dim}")
    return v


def parse_cone_spec(doc: dict) -> Cone:
    """Build a cone from ``{"type": "orthant", "dim": N}`` or
    ``{"type": "ice_cream", "w": [...], "beta": b}``."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("cone spec must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "orthant":
        dim = doc.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise ValueError("orthant spec needs an integer 'dim'")
        return Orthant(dim)
    if kind == "ice_cream":
        if "w" not in doc or "beta" not in doc:
            raise ValueError("ice_cream spec needs 'w' and 'beta'")
        return IceCream(np.asarray(doc["w"], dtype=float), float(doc["beta"]))
    raise ValueError(f"unknown cone type {kind!r}")


def contains(cone: Cone, v, interior: bool = False):
    return cone.contains(v, interior=interior)


def compare(cone: Cone, x, y) -> OrderRelation:
    """Order relations between two points: ``x <=_K y``, ``x <_K y``, ``x <<_K y``."""
    x = as_vector(x, cone.dim, "x")
    y = as_vector(y, cone.dim, "y")
    d = y - x
    leq = bool(cone.contains(d))
    lt = leq and not np.array_equal(x, y)
    ll = bool(cone.solid and cone.contains(d, interior=True))
    return OrderRelation(leq, lt, ll and lt)


def lambda_coefficient(beta: float) -> float:
    """Slope bound of the 2-D ice-cream order around (1, 1)."""
    if beta > math.sqrt(2) / 2 + 1e-15:
        raise ValueError(f"beta must not exceed sqrt(2)/2, got {beta}")
    gamma = min(beta * math.sqrt(2), 1.0)
    if gamma == 1.0:
        return 0.0
    s = 1.0 - gamma * gamma
    return (-1.0 + math.sqrt(1.0 - s * s)) / s


def leq_lambda_2d(beta: float, x, y):
    """``x <=_K y`` for ``K = C((1,1), beta)`` via two linear inequalities.

    Vectorized over leading axes of ``x`` and ``y``.
    """
    lam = lambda_coefficient(beta)
    d = np.asarray(y, dtype=float) - np.asarray(x, dtype=float)
    if d.shape[-1:] != (2,):
        raise ValueError("leq_lambda_2d works in R^2 only")
    d1, d2 = d[..., 0], d[..., 1]
    return (d1 >= lam * d2) & (d2 >= lam * d1)


def sup_orthant(x, y) -> np.ndarray:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("dimension mismatch")
    return np.maximum(x, y)


def inf_orthant(x, y) -> np.ndarray:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("dimension mismatch")
    return np.minimum(x, y)


def weighted_max_norm(x, v):
    """``max_i |x_i| / v_i`` for a strictly positive weight ``v``.

    ``x`` may carry leading batch axes.
    """
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0):
        raise ValueError("weight vector must be strictly positive")
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != v.shape:
        raise ValueError("dimension mismatch")
    return np.max(np.abs(x) / v, axis=-1)


def order_body_bounded(cone: Cone) -> bool:
    """Whether ``D(a) = {z : |z| <=_K a}`` is bounded, i.e. K holds no
    nonzero componentwise-nonpositive vector."""
    if isinstance(cone, Orthant):
        return True
    u = cone.axis
    neg = np.minimum(u, 0.0)
    if np.any(neg < 0):
        best = np.linalg.norm(neg)
    elif np.any(u == 0):
        best = 0.0
    else:
        best = -float(np.min(u))
    return best < cone.beta - cone.tau


def gauge_norm(x, anchor, cone: Cone, tol: float = 1e-14) -> float:
    """Minkowski gauge of the symmetric body ``D(anchor)``.

    This is the least ``s >= 0`` with ``|x| <=_K s * anchor``.
    """
    anchor = as_vector(anchor, cone.dim, "anchor")
    x = as_vector(x, cone.dim, "x")
    if not np.all(anchor > 0):
        raise ValueError("anchor must be strongly positive")
    if not order_body_bounded(cone):
        raise ValueError("D(anchor) is unbounded for this cone")
    if not cone.contains(anchor, interior=True):
        raise ValueError("anchor must lie in the interior of the cone")
    ax = np.abs(x)
    if isinstance(cone, Orthant):
        return float(np.max(ax / anchor))
    if not np.any(ax):
        return 0.0
    exact = replace(cone, tau=0.0)
    ok = lambda s: bool(exact.contains(s * anchor - ax))
    hi = float(np.max(ax / anchor))
    if hi == 0.0:
        hi = 1.0
    while not ok(hi):
        hi *= 2.0
    lo = 0.0
    while hi - lo > tol * max(hi, 1.0):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def opening_angle(cone: Cone) -> float:
    """Half-angle of the smallest enclosing ice-cream cone."""
    if isinstance(cone, Orthant):
        return math.acos(1.0 / math.sqrt(cone.dim))
    return math.acos(cone.beta)


@dataclass(frozen=True)
class ConeGeometry:
    opening_angle: float
    delta_K: float
    solid: bool


def geometry(cone: Cone, w=None, resolution: int = 400) -> ConeGeometry:
    if w is None:
        w = np.ones(cone.dim) if isinstance(cone, Orthant) else cone.w
    return ConeGeometry(opening_angle(cone), delta_K(cone, w, resolution), cone.solid)


def _symmetric_body(cone: Cone, w: np.ndarray):
    """Membership in ``(w - K) ∩ (-w + K)``, vectorized."""
    return lambda V: cone.contains(w - V) & cone.contains(w + V)


def delta_K(cone: Cone, w, resolution: int = 1000, method: str = "auto",
            refine: int = 40) -> float:
    """Estimate ``sup{||v||_w : v, -v <=_K w}``.

    ``method="analytic"`` is available for the orthant (the value is 1);
    ``"grid"`` maximizes over a grid of the bounding box followed by local
    zoom refinement around the best grid points.
    """
    w = as_vector(w, cone.dim, "w")
    if opening_angle(cone) >= math.pi / 2 - 1e-15:
        raise ValueError("cone opening angle must be below pi/2")
    if not cone.contains(w, interior=True):
        raise ValueError("w must lie in the interior of the cone")
    if np.any(w <= 0):
        raise ValueError("w must be strictly positive for the w-norm")
    if method == "auto":
        method = "analytic" if isinstance(cone, Orthant) else "grid"
    if method == "analytic":
        if not isinstance(cone, Orthant):
            raise ValueError("analytic delta_K is only available for the orthant")
        return 1.0
    if method != "grid":
        raise ValueError(f"unknown method {method!r}")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")

    member = _symmetric_body(cone, w)
    n = cone.dim
    if isinstance(cone, Orthant):
        radius = float(np.max(w))
    else:
        # k + k' = 2w with k, k' in K bounds |k| by 2<w, axis>/beta
        radius = float(np.linalg.norm(w) + 2.0 * (w @ cone.axis) / cone.beta)
    per_axis = resolution + 1
    budget = 4_000_000
    if per_axis ** n > budget:
        per_axis = max(3, int(budget ** (1.0 / n)))
    ticks = np.linspace(-radius, radius, per_axis)
    grid = np.stack(np.meshgrid(*([ticks] * n), indexing="ij"), axis=-1).reshape(-1, n)
    grid = np.vstack([grid, w, -w])
    inside = member(grid)
    pts = grid[inside]
    vals = weighted_max_norm(pts, w)
    best = float(vals.max())

    step = ticks[1] - ticks[0]
    order = np.argsort(-vals, kind="stable")[:8]
    local = np.linspace(-1.0, 1.0, 9)
    offsets = np.stack(np.meshgrid(*([local] * n), indexing="ij"), axis=-1).reshape(-1, n)
    for start in pts[order]:
        centre, h = start.copy(), step
        for _ in range(refine):
            cand = centre + h * offsets
            ok = member(cand)
            if np.any(ok):
                cv = weighted_max_norm(cand[ok], w)
                i = int(np.argmax(cv))
                if cv[i] >= weighted_max_norm(centre, w):
                    centre = cand[ok][i]
            h *= 0.5
        best = max(best, float(weighted_max_norm(centre, w)))
    return best
